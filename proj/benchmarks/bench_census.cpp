#include <benchmark/benchmark.h>

#include "qit/census.hpp"
#include "qit/torsion.hpp"

namespace {

void BM_enumerate_minimal(benchmark::State& state) {
    const long long X = state.range(0);
    for (auto _ : state) {
        long long n = 0;
        qit::enumerate_minimal(X, [&](const qit::Curve&) { ++n; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_enumerate_minimal)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_torsion_structure(benchmark::State& state) {
    // a fixed bag of small curves covering several torsion shapes
    const qit::Curve curves[] = {
        {qit::GaussianInt(0), qit::GaussianInt(1)},
        {qit::GaussianInt(1), qit::GaussianInt(0)},
        {qit::GaussianInt(-1), qit::GaussianInt(0)},
        {qit::GaussianInt(1), qit::GaussianInt(1)},
        {qit::GaussianInt(0), qit::GaussianInt(0, 1)},
        {qit::GaussianInt(0), qit::GaussianInt(16)},
    };
    std::size_t k = 0;
    for (auto _ : state) {
        auto label = qit::torsion_structure(curves[k % std::size(curves)]);
        benchmark::DoNotOptimize(label);
        ++k;
    }
}
BENCHMARK(BM_torsion_structure);

void BM_restricted_census(benchmark::State& state) {
    const long long X = state.range(0);
    qit::CensusOptions opt;
    opt.grid = {X};
    opt.groups = {qit::TorsionLabel{2, 2}};
    for (auto _ : state) {
        auto rows = qit::census(opt);
        benchmark::DoNotOptimize(rows);
    }
}
BENCHMARK(BM_restricted_census)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
