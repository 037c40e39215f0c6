#include <benchmark/benchmark.h>

#include <random>

#include "ndcwt/transform2d.hpp"

using namespace ndcwt;

namespace {

Eigen::VectorXd random_signal(Eigen::Index m) {
    std::mt19937 eng(7);
    std::normal_distribution<double> g;
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) y[i] = g(eng);
    return y;
}

void BM_BuildPlan1D(benchmark::State& state) {
    const auto m = static_cast<Eigen::Index>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    const auto f = get_filter("cdaub6");
    for (auto _ : state) {
        TransformPlan1D plan(m, p, f);
        benchmark::DoNotOptimize(plan.W().data());
    }
}
BENCHMARK(BM_BuildPlan1D)->Args({1024, 4})->Args({4096, 4})->Args({4096, 7});

void BM_Forward1D(benchmark::State& state) {
    const auto m = static_cast<Eigen::Index>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    const TransformPlan1D plan(m, p, get_filter("cdaub6"));
    const Eigen::VectorXd y = random_signal(m);
    for (auto _ : state) {
        auto coeffs = plan.forward(y);
        benchmark::DoNotOptimize(coeffs.stacked.data());
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_Forward1D)->Args({1024, 4})->Args({4096, 4})->Args({4096, 7});

void BM_RoundTrip1D(benchmark::State& state) {
    const auto m = static_cast<Eigen::Index>(state.range(0));
    const TransformPlan1D plan(m, 4, get_filter("cdaub6"));
    const Eigen::VectorXd y = random_signal(m);
    for (auto _ : state) {
        auto back = plan.inverse(plan.forward(y));
        benchmark::DoNotOptimize(back.data());
    }
}
BENCHMARK(BM_RoundTrip1D)->Arg(1024)->Arg(4096);

void BM_Forward2D(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const TransformPlan2D plan(n, n, 4, 4, get_filter("cdaub6"));
    std::mt19937 eng(3);
    std::normal_distribution<double> g;
    Eigen::MatrixXd A(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) A(i, j) = g(eng);
    for (auto _ : state) {
        auto coeffs = plan.forward(A);
        benchmark::DoNotOptimize(coeffs.B.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Forward2D)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
