#include "doctest.h"

#include <fstream>
#include <sstream>

#include "hyperaff/io.hpp"
#include "hyperaff/pipeline.hpp"

using namespace hyperaff;

namespace {

CNumber q(long long num, long long den = 1) { return CNumber(Rational(num, den)); }

ProblemFile load_fixture(const std::string& name) {
    std::ifstream in(std::string(HYPERAFF_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_problem(os.str());
}

}  // namespace

TEST_CASE("generator-count shortcuts") {
    CHECK(shortcut_generator_count(2, 2, std::nullopt).has_value());
    CHECK_FALSE(shortcut_generator_count(3, 2, std::nullopt).has_value());
    // with r known: p + r <= 2n + 1 fires
    CHECK(shortcut_generator_count(3, 2, 2).has_value());
    CHECK_FALSE(shortcut_generator_count(4, 2, 2).has_value());
    CHECK(shortcut_generator_count(4, 2, 1).has_value());
    CHECK_FALSE(shortcut_generator_count(5, 2, 1).has_value());
}

TEST_CASE("pipeline: reference family is hypercyclic, certified") {
    ProblemFile pf = load_fixture("example_four_generators.json");
    PipelineOptions opts;
    opts.supplied_witnesses = pf.witnesses;
    DecisionReport rep = decide_hypercyclic(pf.generators, opts);
    CHECK(rep.outcome == Outcome::Hypercyclic);
    CHECK(rep.certified);
    CHECK(rep.n == 2);
    CHECK(rep.p == 4);
    CHECK(rep.partition.eta == std::vector<std::size_t>{2, 1});
    CHECK_FALSE(rep.shortcut_applied);
    REQUIRE(rep.density.has_value());
    CHECK(rep.density->result == Density::Dense);
    CHECK(rep.density->det_linear_form.size() == 5);
}

TEST_CASE("pipeline: p <= n shortcut") {
    ProblemFile pf = load_fixture("too_few_generators.json");
    DecisionReport rep = decide_hypercyclic(pf.generators);
    CHECK(rep.outcome == Outcome::NotHypercyclic);
    CHECK(rep.certified);
    CHECK(rep.shortcut_applied);
    CHECK_FALSE(rep.normal_form.has_value());
}

TEST_CASE("pipeline: p + r shortcut after normal form") {
    // drop one generator of the reference family: p = 3, r = 2, 3 + 2 <= 5
    ProblemFile pf = load_fixture("example_four_generators.json");
    std::vector<AffineMap> three(pf.generators.begin(), pf.generators.begin() + 3);
    DecisionReport rep = decide_hypercyclic(three);
    CHECK(rep.outcome == Outcome::NotHypercyclic);
    CHECK(rep.certified);
    CHECK(rep.shortcut_applied);
    CHECK(rep.normal_form.has_value());
}

TEST_CASE("pipeline: non-abelian input throws with the witness pair") {
    ProblemFile pf = load_fixture("noncommuting.json");
    CHECK_THROWS_AS(decide_hypercyclic(pf.generators), NotAbelianError);
}

TEST_CASE("pipeline: non-invertible generator throws") {
    CMatrix A(1, 1);
    A.at(0, 0) = q(0);
    std::vector<AffineMap> fs(2, AffineMap(A, {q(0)}));
    CHECK_THROWS_AS(decide_hypercyclic(fs), NotInvertibleError);
}

TEST_CASE("pipeline: bad supplied witness is rejected") {
    ProblemFile pf = load_fixture("bad_witness.json");
    PipelineOptions opts;
    opts.supplied_witnesses = pf.witnesses;
    CHECK_THROWS_AS(decide_hypercyclic(pf.generators, opts), NumericalFailure);
}

TEST_CASE("pipeline: float generators without witnesses give a heuristic verdict") {
    ProblemFile pf = load_fixture("float_heuristic.json");
    DecisionReport rep = decide_hypercyclic(pf.generators);
    CHECK(rep.outcome == Outcome::Hypercyclic);
    CHECK_FALSE(rep.certified);
    REQUIRE(rep.density.has_value());
    CHECK_FALSE(rep.density->certified);
}

TEST_CASE("pipeline: force_numeric downgrades certification") {
    ProblemFile pf = load_fixture("example_four_generators.json");
    PipelineOptions opts;
    opts.supplied_witnesses = pf.witnesses;
    opts.force_numeric = true;
    DecisionReport rep = decide_hypercyclic(pf.generators, opts);
    CHECK(rep.outcome == Outcome::Hypercyclic);
    CHECK_FALSE(rep.certified);
}

TEST_CASE("pipeline: trusted conjugation data is verified and used") {
    ProblemFile pf = load_fixture("example_four_generators.json");
    PipelineOptions opts;
    opts.supplied_witnesses = pf.witnesses;
    opts.trusted_P = CMatrix::identity(3);
    opts.trusted_partition = Partition{{2, 1}};
    DecisionReport rep = decide_hypercyclic(pf.generators, opts);
    CHECK(rep.outcome == Outcome::Hypercyclic);
    CHECK(rep.certified);

    opts.trusted_partition = Partition{{1, 1, 1}};
    CHECK_THROWS_AS(decide_hypercyclic(pf.generators, opts), NumericalFailure);
}
