#include "doctest.h"

#include <fstream>
#include <sstream>

#include "hyperaff/io.hpp"

using namespace hyperaff;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(HYPERAFF_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("scalar grammar: values") {
    SymbolRegistry reg;
    reg.declare_reciprocal("inv_pi", "pi");
    CHECK(parse_scalar("3/4", reg) == SymScalar(Rational(3, 4)));
    CHECK(parse_scalar("-2", reg) == SymScalar(Rational(-2)));
    CHECK(parse_scalar("sqrt(8)", reg) == SymScalar::sqrt(Rational(8)));
    CHECK(parse_scalar("2*sqrt(2)", reg) == SymScalar::sqrt(Rational(8)));
    CHECK(parse_scalar("pi*inv_pi", reg) == SymScalar(Rational(1)));
    CHECK(parse_scalar("1/2*sqrt(5)-1/2*sqrt(3)*inv_pi", reg).approx() ==
          doctest::Approx(0.5 * std::sqrt(5.0) - std::sqrt(3.0) / (2 * 3.14159265358979))
              .epsilon(1e-10));
    CHECK(parse_scalar(" 1 + 1 ", reg) == SymScalar(Rational(2)));
    CHECK(parse_scalar("2-3", reg) == SymScalar(Rational(-1)));
}

TEST_CASE("scalar grammar: errors carry a position") {
    SymbolRegistry reg;
    CHECK_THROWS_AS(parse_scalar("1/0", reg), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("sqrt(-2)", reg), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("unknown_symbol", reg), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1 + ", reg), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1 2", reg), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("", reg), std::invalid_argument);
    try {
        parse_scalar("1+zzz", reg);
        FAIL("expected throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("scalar grammar round trip") {
    SymbolRegistry reg;
    reg.declare_reciprocal("inv_pi", "pi");
    for (const std::string s :
         {"0", "-2", "3/4", "sqrt(2)", "1/2*sqrt(5)-1/2*sqrt(3)*inv_pi", "2*pi",
          "pi*pi", "-1+sqrt(7)*inv_pi*inv_pi"}) {
        SymScalar x = parse_scalar(s, reg);
        std::string rendered = scalar_to_grammar(x, reg);
        CHECK(parse_scalar(rendered, reg) == x);
    }
    // negative exponent without a declared reciprocal name cannot render
    SymbolRegistry bare;
    SymScalar bad(Rational(1), symbol_monomial(pi_symbol(), -1));
    CHECK_THROWS_AS(scalar_to_grammar(bad, bare), std::invalid_argument);
}

TEST_CASE("problem file parse") {
    ProblemFile pf = parse_problem(fixture("example_four_generators.json"));
    CHECK(pf.n == 2);
    CHECK(pf.generators.size() == 4);
    CHECK(pf.witnesses.size() == 4);
    CHECK(pf.independence_declared);
    CHECK(pf.registry.has("inv_pi"));
    // witnesses are fully exact; generators mix exact and float entries
    for (const auto& w : pf.witnesses) CHECK(w.is_exact());
    CHECK(pf.generators[0].is_exact());
    CHECK_FALSE(pf.generators[1].is_exact());
    // exactness of a parsed symbolic entry
    CHECK(pf.witnesses[3].a[0] ==
          CNumber(SymScalar(), Rational(2) * SymScalar(Rational(1), symbol_monomial(pi_symbol()))));
}

TEST_CASE("problem file parse failures") {
    CHECK_THROWS_AS(parse_problem("{"), std::invalid_argument);
    CHECK_THROWS_AS(parse_problem("{\"n\": 1, \"generators\": []}"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_problem("{\"n\": 1, \"mode\": \"bogus\", \"generators\": "
                      "[{\"A\": [[\"1\"]], \"a\": [\"0\"]}]}"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_problem("{\"n\": 2, \"generators\": [{\"A\": [[\"1\"]], \"a\": [\"0\"]}]}"),
        std::invalid_argument);
}

TEST_CASE("problem file round trip") {
    for (const std::string name :
         {"example_four_generators.json", "contraction.json", "too_few_generators.json"}) {
        ProblemFile pf = parse_problem(fixture(name));
        ProblemFile back = parse_problem(serialize_problem(pf));
        CHECK(back.n == pf.n);
        CHECK(back.mode == pf.mode);
        CHECK(back.symbol_decls == pf.symbol_decls);
        CHECK(back.independence_declared == pf.independence_declared);
        REQUIRE(back.generators.size() == pf.generators.size());
        REQUIRE(back.witnesses.size() == pf.witnesses.size());
        auto same = [](const AffineMap& x, const AffineMap& y) {
            REQUIRE(x.n == y.n);
            for (std::size_t i = 0; i < x.n; ++i) {
                for (std::size_t j = 0; j < x.n; ++j) {
                    CHECK(x.A.at(i, j).is_exact() == y.A.at(i, j).is_exact());
                    if (x.A.at(i, j).is_exact())
                        CHECK(x.A.at(i, j) == y.A.at(i, j));
                    else
                        CHECK(x.A.at(i, j).approx() == y.A.at(i, j).approx());
                }
                CHECK(x.a[i].is_exact() == y.a[i].is_exact());
                if (x.a[i].is_exact())
                    CHECK(x.a[i] == y.a[i]);
                else
                    CHECK(x.a[i].approx() == y.a[i].approx());
            }
        };
        for (std::size_t k = 0; k < pf.generators.size(); ++k)
            same(back.generators[k], pf.generators[k]);
        for (std::size_t k = 0; k < pf.witnesses.size(); ++k)
            same(back.witnesses[k], pf.witnesses[k]);
        // serialization is stable
        CHECK(serialize_problem(back) == serialize_problem(pf));
    }
}
