#include <benchmark/benchmark.h>

#include "ndcwt/fbm.hpp"
#include "ndcwt/rng.hpp"

using namespace ndcwt;

namespace {

void BM_Fbm1D(benchmark::State& state) {
    const auto m = static_cast<Eigen::Index>(state.range(0));
    std::uint64_t rep = 0;
    for (auto _ : state) {
        auto path = simulate_fbm_1d(
            {.hurst = 0.7, .length = m, .cols = 0, .seed = derive_seed(1, rep++)});
        benchmark::DoNotOptimize(path.data());
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_Fbm1D)->Arg(1024)->Arg(4096)->Arg(65536);

void BM_Fbm2D(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::uint64_t rep = 0;
    for (auto _ : state) {
        auto field = simulate_fbm_2d({.hurst = 0.5, .length = n, .cols = n,
                                      .seed = derive_seed(2, rep++)});
        benchmark::DoNotOptimize(field.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Fbm2D)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GaussianStream(benchmark::State& state) {
    GaussianStream gs(42);
    for (auto _ : state) benchmark::DoNotOptimize(gs.next());
}
BENCHMARK(BM_GaussianStream);

}  // namespace

BENCHMARK_MAIN();
