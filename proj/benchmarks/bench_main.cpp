#include <benchmark/benchmark.h>

#include <random>

#include "hyperaff/density.hpp"
#include "hyperaff/orbit.hpp"
#include "hyperaff/pipeline.hpp"

using namespace hyperaff;

namespace {

SymScalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    SymScalar s(Rational(num(rng), den(rng)));
    s += Rational(num(rng), den(rng)) * SymScalar::sqrt(Rational(2));
    return s;
}

void bm_scalar_mul(benchmark::State& state) {
    std::mt19937_64 rng(1);
    SymScalar a = random_scalar(rng), b = random_scalar(rng);
    for (auto _ : state) {
        SymScalar c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_scalar_mul);

void bm_exact_det(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = CNumber(random_scalar(rng), random_scalar(rng));
    for (auto _ : state) {
        CNumber d = exact_det(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(bm_exact_det)->Arg(3)->Arg(5);

DensityInstance radical_instance() {
    DensityInstance inst;
    inst.n = 1;
    inst.generators = {
        CVector{CNumber(Rational(1))},
        CVector{CNumber::i()},
        CVector{CNumber(SymScalar::sqrt(Rational(2)), SymScalar::sqrt(Rational(3)))}};
    return inst;
}

void bm_decide_dense_exact(benchmark::State& state) {
    DensityInstance inst = radical_instance();
    for (auto _ : state) {
        DensityVerdict v = decide_dense(inst);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_decide_dense_exact);

void bm_decide_dense_numeric(benchmark::State& state) {
    DensityInstance exact = radical_instance();
    DensityInstance inst;
    inst.n = exact.n;
    for (const auto& g : exact.generators) {
        CVector v;
        for (const auto& c : g) v.push_back(CNumber::from_double(c.approx()));
        inst.generators.push_back(std::move(v));
    }
    for (auto _ : state) {
        DensityVerdict v = decide_dense(inst);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_decide_dense_numeric);

void bm_orbit_sampling(benchmark::State& state) {
    // two independent irrational translations on C^1
    std::vector<AffineMap> fs;
    CMatrix id = CMatrix::identity(1);
    fs.emplace_back(id, CVector{CNumber(SymScalar::sqrt(Rational(2)), SymScalar())});
    fs.emplace_back(id, CVector{CNumber(SymScalar(), SymScalar::sqrt(Rational(3)))});
    SimConfig cfg;
    cfg.max_samples = static_cast<std::size_t>(state.range(0));
    cfg.include_inverses = true;
    for (auto _ : state) {
        OrbitSample s = sample_orbit(fs, cfg);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bm_orbit_sampling)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
