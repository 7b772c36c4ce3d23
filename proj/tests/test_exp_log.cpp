#include "doctest.h"

#include <fstream>
#include <sstream>

#include "hyperaff/exp_log.hpp"
#include "hyperaff/io.hpp"

using namespace hyperaff;

namespace {

CNumber q(long long num, long long den = 1) { return CNumber(Rational(num, den)); }

SymScalar pi_term(const Rational& c) {
    return SymScalar(c, symbol_monomial(pi_symbol()));
}
SymScalar log_term(long long p, const Rational& c = 1) {
    return SymScalar(c, symbol_monomial(log_prime_symbol(Int(p))));
}

ProblemFile load_fixture(const std::string& name) {
    std::ifstream in(std::string(HYPERAFF_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_problem(os.str());
}

}  // namespace

TEST_CASE("exact exponential") {
    CHECK(exact_exp(CNumber()) == CNumber(Rational(1)));
    CHECK(exact_exp(CNumber(log_term(2), SymScalar())) == q(2));
    CHECK(exact_exp(CNumber(log_term(2) + log_term(3), SymScalar())) == q(6));
    CHECK(exact_exp(CNumber(log_term(2, Rational(-1)), SymScalar())) == q(1, 2));
    CHECK(exact_exp(CNumber(SymScalar(), pi_term(1))) == q(-1));
    CHECK(exact_exp(CNumber(SymScalar(), pi_term(2))) == q(1));
    CHECK(exact_exp(CNumber(log_term(5), pi_term(3))) == q(-5));
    // outside the pattern
    CHECK_FALSE(exact_exp(CNumber(SymScalar(Rational(1)), SymScalar())).has_value());
    CHECK_FALSE(exact_exp(CNumber(SymScalar(), SymScalar(Rational(1)))).has_value());
    CHECK_FALSE(exact_exp(CNumber(SymScalar::sqrt(Rational(2)), SymScalar())).has_value());
    CHECK_FALSE(exact_exp(CNumber(SymScalar(), pi_term(Rational(1, 2)))).has_value());
}

TEST_CASE("exact logarithm branches") {
    CHECK(exact_log(q(2), 0) == CNumber(log_term(2), SymScalar()));
    CHECK(exact_log(q(4), 0) == CNumber(log_term(2, 2), SymScalar()));
    CHECK(exact_log(q(1), 0) == CNumber());
    CHECK(exact_log(q(1), 1) == CNumber(SymScalar(), pi_term(2)));
    CHECK(exact_log(q(-1), 0) == CNumber(SymScalar(), pi_term(1)));
    CHECK(exact_log(q(-6), 0) ==
          CNumber(log_term(2) + log_term(3), pi_term(1)));
    CHECK(exact_log(q(3, 2), 0) ==
          CNumber(log_term(3) + log_term(2, Rational(-1)), SymScalar()));
    // purely imaginary rational: i -> i pi/2, -2i -> log 2 - i pi/2
    CHECK(exact_log(CNumber::i(), 0) == CNumber(SymScalar(), pi_term(Rational(1, 2))));
    CHECK(exact_log(q(-2) * CNumber::i(), 0) ==
          CNumber(log_term(2), pi_term(Rational(-1, 2))));
    // not exactly representable
    CHECK_FALSE(exact_log(CNumber(SymScalar(Rational(1)), SymScalar(Rational(1))), 0)
                    .has_value());
    CHECK_FALSE(exact_log(CNumber(), 0).has_value());
    // round trip with branch shift
    auto l = exact_log(q(7), 3);
    REQUIRE(l.has_value());
    CHECK(exact_exp(*l) == q(7));
}

TEST_CASE("cone exp/log round trip, exact") {
    Partition eta{{2, 1}};
    CMatrix m(3, 3);
    m.at(0, 0) = q(2);
    m.at(1, 0) = CNumber(SymScalar(Rational(3)), SymScalar(Rational(-1)));
    m.at(1, 1) = q(2);
    m.at(2, 2) = q(5);
    CMatrix l = log_k(m, eta, {0, 0});
    CHECK(l.is_exact());
    CHECK(exp_k(l, eta) == m);
    // a nonzero branch changes the log but not the exponential
    CMatrix l2 = log_k(m, eta, {1, -2});
    CHECK(l2 != l);
    CHECK(exp_k(l2, eta) == m);
    // unipotent block: log is the nilpotent part itself
    CMatrix u = CMatrix::identity(2);
    u.at(1, 0) = CNumber(SymScalar(Rational(1)), SymScalar(Rational(1)));
    CMatrix lu = log_k(u, Partition{{2}}, {0});
    CHECK(lu.at(0, 0) == q(0));
    CHECK(lu.at(1, 0) == u.at(1, 0));
    CHECK(exp_k(lu, Partition{{2}}) == u);
}

TEST_CASE("cone exp/log round trip, float") {
    Partition eta{{2, 1}};
    CMatrix m(3, 3);
    m.at(0, 0) = CNumber::from_double({0.3, 0.7});
    m.at(1, 0) = CNumber::from_double({-1.2, 0.4});
    m.at(1, 1) = m.at(0, 0);
    m.at(2, 2) = CNumber::from_double({2.5, -0.1});
    for (long b : {0L, 1L, -3L}) {
        CMatrix l = log_k(m, eta, {b, 0});
        CHECK(approx_equal(exp_k(l, eta), m, 1e-12));
    }
}

TEST_CASE("psi branch adjustment") {
    CMatrix n(2, 2);
    n.at(0, 0) = CNumber(SymScalar(), pi_term(4));  // 4 i pi = 2 * (2 i pi)
    n.at(1, 0) = q(3);
    n.at(1, 1) = q(1);
    auto adj = psi_adjust(n);
    CHECK(adj.shift == 2);
    CHECK(adj.matrix.at(0, 0) == q(0));
    CHECK(adj.matrix.at(1, 1) == n.at(1, 1) - CNumber(SymScalar(), pi_term(4)));

    CMatrix zero(2, 2);
    zero.at(1, 1) = q(5);
    CHECK(psi_adjust(zero).shift == 0);

    CMatrix bad(2, 2);
    bad.at(0, 0) = CNumber(SymScalar(), pi_term(1));  // i pi: odd half-turn
    CHECK_THROWS_AS(psi_adjust(bad), BranchError);
    bad.at(0, 0) = q(1);
    CHECK_THROWS_AS(psi_adjust(bad), BranchError);
}

TEST_CASE("log witnesses for the reference family") {
    ProblemFile pf = load_fixture("example_four_generators.json");
    NormalForm nf = find_normal_form(pf.generators);

    // generator 1 is a pure translation: the witness is exact and literal
    LogWitness w1 = log_witness(pf.generators[0], nf);
    CHECK(w1.fprime.A == CMatrix(2, 2));
    CHECK(w1.fprime.a[0] == CNumber(SymScalar(Rational(1)), SymScalar(Rational(1))));
    CHECK(w1.fprime.a[1] == q(0));

    // generator 4 translates by 2 i pi: witness keeps the exact symbol
    LogWitness w4 = log_witness(pf.generators[3], nf);
    CHECK(w4.fprime.a[0] == CNumber(SymScalar(), pi_term(2)));

    // every generator gets a verified witness in the float shadow
    for (const auto& g : pf.generators) {
        LogWitness w = log_witness(g, nf);
        CHECK(witness_deviation(g, w.fprime) <= 1e-9);
    }

    // the supplied fixture witnesses agree with the recomputed ones
    REQUIRE(pf.witnesses.size() == pf.generators.size());
    for (std::size_t k = 0; k < pf.generators.size(); ++k)
        CHECK(witness_deviation(pf.generators[k], pf.witnesses[k]) <= 1e-9);
}

TEST_CASE("witness deviation flags a wrong witness") {
    ProblemFile pf = load_fixture("bad_witness.json");
    NormalForm nf = find_normal_form(pf.generators);
    bool any_bad = false;
    for (std::size_t k = 0; k < pf.generators.size(); ++k)
        if (witness_deviation(pf.generators[k], pf.witnesses[k]) > 1e-6) any_bad = true;
    CHECK(any_bad);
    (void)nf;
}
