#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qit/gaussian.hpp"

namespace {

std::vector<qit::GaussianInt> sample_values(long span, std::size_t count) {
    std::mt19937_64 rng(20240901ULL);
    std::uniform_int_distribution<long> d(-span, span);
    std::vector<qit::GaussianInt> out;
    out.reserve(count);
    while (out.size() < count) {
        qit::GaussianInt z(d(rng), d(rng));
        if (!z.is_zero()) out.push_back(z);
    }
    return out;
}

void BM_euclid_divmod(benchmark::State& state) {
    auto vals = sample_values(1000000L, 512);
    std::size_t k = 0;
    for (auto _ : state) {
        const auto& a = vals[k % vals.size()];
        const auto& b = vals[(k + 1) % vals.size()];
        auto qr = qit::euclid_divmod(a, b);
        benchmark::DoNotOptimize(qr);
        ++k;
    }
}
BENCHMARK(BM_euclid_divmod);

void BM_gcd(benchmark::State& state) {
    auto vals = sample_values(1000000L, 512);
    std::size_t k = 0;
    for (auto _ : state) {
        auto g = qit::gcd(vals[k % vals.size()], vals[(k + 7) % vals.size()]);
        benchmark::DoNotOptimize(g);
        ++k;
    }
}
BENCHMARK(BM_gcd);

void BM_factor(benchmark::State& state) {
    auto vals = sample_values(static_cast<long>(state.range(0)), 64);
    std::size_t k = 0;
    for (auto _ : state) {
        auto f = qit::factor(vals[k % vals.size()]);
        benchmark::DoNotOptimize(f);
        ++k;
    }
}
BENCHMARK(BM_factor)->Arg(1000)->Arg(100000)->Arg(10000000);

}  // namespace

BENCHMARK_MAIN();
