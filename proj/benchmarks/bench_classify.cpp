#include <benchmark/benchmark.h>

#include <vector>

#include "frameforge/classify.hpp"
#include "frameforge/duals.hpp"
#include "frameforge/gallery.hpp"

using namespace frameforge;

static void BM_ClassifyEditScript(benchmark::State& state) {
    const VectorSequence s = gallery_get("duplicate-e1").sequence;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_structured(s));
    }
}
BENCHMARK(BM_ClassifyEditScript);

static void BM_ScanGrowingRule(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const VectorSequence s = gallery_get("odd-basis-with-growing-codual").sequence;
    const std::vector<Truncation> schedule =
        lossless_schedule(s, {std::max(2, n / 4), std::max(3, n / 2), n});
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan(s, schedule));
    }
}
BENCHMARK(BM_ScanGrowingRule)->RangeMultiplier(2)->Range(8, 64);

static void BM_VerifyCodualPair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GalleryEntry entry = gallery_get("odd-basis-with-growing-codual");
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_duality(entry.sequence, *entry.partner,
                                                DualityRelation::Codual, std::nullopt, n));
    }
}
BENCHMARK(BM_VerifyCodualPair)->RangeMultiplier(2)->Range(16, 64);
