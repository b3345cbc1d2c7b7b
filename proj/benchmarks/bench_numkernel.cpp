#include <benchmark/benchmark.h>

#include <random>

#include "frameforge/classify.hpp"
#include "frameforge/numkernel.hpp"
#include "frameforge/random.hpp"

using namespace frameforge;

namespace {

Matrix seeded_matrix(int rows, int cols) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(rows) * 1000 + cols);
    return make_complex(random_gaussian_complex(rng, rows, cols));
}

}  // namespace

static void BM_Svd(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix a = seeded_matrix(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd(a));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(8, 64)->Complexity(benchmark::oNCubed);

static void BM_PseudoInverse(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix a = seeded_matrix(n, n + 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pseudo_inverse(a));
    }
}
BENCHMARK(BM_PseudoInverse)->RangeMultiplier(2)->Range(8, 64);

static void BM_Analyze(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix a = seeded_matrix(n, n + 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(a));
    }
}
BENCHMARK(BM_Analyze)->RangeMultiplier(2)->Range(8, 64);

BENCHMARK_MAIN();
