#include "doctest.h"

#include <fstream>
#include <sstream>

#include "hyperaff/density.hpp"
#include "hyperaff/io.hpp"

using namespace hyperaff;

namespace {

CNumber q(long long num, long long den = 1) { return CNumber(Rational(num, den)); }

SymScalar pi_pow(const Rational& c, int exp) {
    return SymScalar(c, symbol_monomial(pi_symbol(), exp));
}

ProblemFile load_fixture(const std::string& name) {
    std::ifstream in(std::string(HYPERAFF_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_problem(os.str());
}

DensityInstance reference_instance() {
    ProblemFile pf = load_fixture("example_four_generators.json");
    NormalForm nf = find_normal_form(pf.generators);
    DensityInstance inst;
    inst.n = pf.n;
    inst.generators = q_w0_generators(pf.witnesses, nf);
    return inst;
}

/// s must be orthogonal to every vector of the exact null space of the rows
/// (that is: s lies in the row space).
void check_witness_in_rowspace(const PropertyDMatrix& m, const std::vector<Int>& s) {
    REQUIRE(s.size() == m.q);
    bool nonzero = false;
    for (const auto& x : s)
        if (x != 0) nonzero = true;
    CHECK(nonzero);
    auto rr = sym_rank_nullspace(m.rows);
    for (const auto& v : rr.nullspace) {
        SymScalar dot;
        for (std::size_t i = 0; i < m.q; ++i) dot += Rational(s[i]) * v[i];
        CHECK(dot.is_zero());
    }
}

}  // namespace

TEST_CASE("group generators at the base point") {
    ProblemFile pf = load_fixture("example_four_generators.json");
    NormalForm nf = find_normal_form(pf.generators);
    auto gens = q_w0_generators(pf.witnesses, nf);
    REQUIRE(gens.size() == 5);  // 4 witnesses + r - 1 = 1 lattice vector
    // f'_1(w0) = b_1 and f'_2(w0) = (0, -2 + i)
    CHECK(gens[0] == CVector{CNumber(SymScalar(Rational(1)), SymScalar(Rational(1))), q(0)});
    CHECK(gens[1] == CVector{q(0), CNumber(SymScalar(Rational(-2)), SymScalar(Rational(1)))});
    // lattice direction 2 i pi p2(P e^(2)) = (0, 2 i pi)
    CHECK(gens[4] == CVector{q(0), CNumber(SymScalar(), pi_pow(Rational(2), 1))});
}

TEST_CASE("property matrix assembly") {
    DensityInstance inst = reference_instance();
    PropertyDMatrix m = assemble_property_d(inst);
    CHECK(m.n == 2);
    CHECK(m.q == 5);
    CHECK(m.exact);
    CHECK(m.rows[0][0] == SymScalar(Rational(1)));   // Re of generator 1, coord 1
    CHECK(m.rows[2][0] == SymScalar(Rational(1)));   // Im of generator 1, coord 1
    CHECK(m.rows[3][4] == pi_pow(Rational(2), 1));   // Im of the lattice vector
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(m.shadow[i][j] ==
                  doctest::Approx(static_cast<double>(m.rows[i][j].approx())).epsilon(1e-12));

    DensityInstance bad;
    bad.n = 2;
    bad.generators = {CVector{q(1)}};
    CHECK_THROWS_AS(assemble_property_d(bad), DimensionMismatch);
}

TEST_CASE("determinant linear form of the reference instance") {
    PropertyDMatrix m = assemble_property_d(reference_instance());
    auto coeffs = determinant_linear_form(m);
    REQUIRE(coeffs.size() == 5);
    // frozen values, proportional to 2 pi (-2 sqrt3, 2 sqrt2, -4 pi, sqrt5, -sqrt7)
    CHECK(coeffs[0] == Rational(-4) * (SymScalar::sqrt(Rational(3)) * pi_pow(Rational(1), 1)));
    CHECK(coeffs[1] == Rational(4) * (SymScalar::sqrt(Rational(2)) * pi_pow(Rational(1), 1)));
    CHECK(coeffs[2] == pi_pow(Rational(-8), 2));
    CHECK(coeffs[3] == Rational(2) * (SymScalar::sqrt(Rational(5)) * pi_pow(Rational(1), 1)));
    CHECK(coeffs[4] == Rational(-2) * (SymScalar::sqrt(Rational(7)) * pi_pow(Rational(1), 1)));

    PropertyDMatrix wrong = m;
    wrong.q = 4;
    for (auto& r : wrong.rows) r.pop_back();
    CHECK_THROWS_AS(determinant_linear_form(wrong), std::invalid_argument);
}

TEST_CASE("exact decision: reference instance is dense") {
    DensityVerdict v = decide_dense_exact(assemble_property_d(reference_instance()));
    CHECK(v.result == Density::Dense);
    CHECK(v.certified);
    CHECK(v.integer_witness.empty());
    CHECK(v.det_linear_form.size() == 5);
}

TEST_CASE("exact decision: too few generators") {
    DensityInstance inst;
    inst.n = 2;
    inst.generators = {CVector{q(1), q(0)}, CVector{q(0), q(1)},
                       CVector{CNumber::i(), q(0)}, CVector{q(0), CNumber::i()}};
    DensityVerdict v = decide_dense(inst);
    CHECK(v.result == Density::NotDense);
    CHECK(v.certified);
    CHECK(v.integer_witness == std::vector<Int>{1, 0, 0, 0});
}

TEST_CASE("exact decision: rank deficit") {
    DensityInstance inst;
    inst.n = 1;
    inst.generators = {CVector{q(1)}, CVector{q(2)}, CVector{q(3)}};
    DensityVerdict v = decide_dense(inst);
    CHECK(v.result == Density::NotDense);
    CHECK(v.certified);
}

TEST_CASE("exact decision: rational full-rank instance has an integer witness") {
    DensityInstance inst;
    inst.n = 1;
    inst.generators = {CVector{q(1)}, CVector{CNumber::i()},
                       CVector{CNumber(SymScalar(Rational(1)), SymScalar(Rational(1)))}};
    PropertyDMatrix m = assemble_property_d(inst);
    DensityVerdict v = decide_dense_exact(m);
    CHECK(v.result == Density::NotDense);
    CHECK(v.certified);
    check_witness_in_rowspace(m, v.integer_witness);
}

TEST_CASE("exact decision: independent radicals give density") {
    // generators 1, i, sqrt2 + i sqrt3 in C^1
    DensityInstance inst;
    inst.n = 1;
    inst.generators = {
        CVector{q(1)}, CVector{CNumber::i()},
        CVector{CNumber(SymScalar::sqrt(Rational(2)), SymScalar::sqrt(Rational(3)))}};
    PropertyDMatrix m = assemble_property_d(inst);
    DensityVerdict v = decide_dense_exact(m);
    CHECK(v.result == Density::Dense);
    CHECK(v.certified);
    // det([rows; s]) = -sqrt2 s1 - sqrt3 s2 + s3
    REQUIRE(v.det_linear_form.size() == 3);
    CHECK(v.det_linear_form[0] == -SymScalar::sqrt(Rational(2)));
    CHECK(v.det_linear_form[1] == -SymScalar::sqrt(Rational(3)));
    CHECK(v.det_linear_form[2] == SymScalar(Rational(1)));
}

TEST_CASE("numeric decision mirrors the exact one, uncertified") {
    auto floatify = [](const DensityInstance& inst) {
        DensityInstance out;
        out.n = inst.n;
        for (const auto& g : inst.generators) {
            CVector v;
            for (const auto& c : g) v.push_back(CNumber::from_double(c.approx()));
            out.generators.push_back(std::move(v));
        }
        return out;
    };

    // dense radical instance -> heuristic Dense
    DensityInstance dense;
    dense.n = 1;
    dense.generators = {
        CVector{q(1)}, CVector{CNumber::i()},
        CVector{CNumber(SymScalar::sqrt(Rational(2)), SymScalar::sqrt(Rational(3)))}};
    DensityVerdict v1 = decide_dense(floatify(dense));
    CHECK(v1.result == Density::Dense);
    CHECK_FALSE(v1.certified);

    // rational full-rank instance -> LLL recovers an integer witness
    DensityInstance rat;
    rat.n = 1;
    rat.generators = {CVector{q(1)}, CVector{CNumber::i()},
                      CVector{CNumber(SymScalar(Rational(2)), SymScalar(Rational(3)))}};
    DensityVerdict v2 = decide_dense(floatify(rat));
    CHECK(v2.result == Density::NotDense);
    CHECK_FALSE(v2.certified);
    check_witness_in_rowspace(assemble_property_d(rat), v2.integer_witness);

    // rank deficit
    DensityInstance flat;
    flat.n = 1;
    flat.generators = {CVector{q(1)}, CVector{q(2)}, CVector{q(3)}};
    DensityVerdict v3 = decide_dense(floatify(flat));
    CHECK(v3.result == Density::NotDense);
    CHECK_FALSE(v3.certified);

    // the reference instance survives the float path
    DensityVerdict v4 = decide_dense(floatify(reference_instance()));
    CHECK(v4.result == Density::Dense);
    CHECK_FALSE(v4.certified);
}
