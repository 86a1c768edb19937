#include <benchmark/benchmark.h>

#include <quadpencil/quadpencil.hpp>

using namespace qp;

namespace {

Polynomial from_roots(const std::vector<Complex>& roots) {
    Polynomial p({1.0});
    for (const auto& r : roots) p = p * Polynomial({-r, 1.0});
    return p;
}

void BM_PolyRoots(benchmark::State& state) {
    Rng rng(1);
    const auto p = from_roots(random_separated(rng, static_cast<int>(state.range(0)), 1.0, 0.05));
    for (auto _ : state) benchmark::DoNotOptimize(poly_roots(p));
}
BENCHMARK(BM_PolyRoots)->Arg(4)->Arg(8)->Arg(16);

void BM_Discriminant(benchmark::State& state) {
    Rng rng(2);
    const int n = static_cast<int>(state.range(0));
    MatrixC A(n, n), B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            A(i, j) = A(j, i) = random_complex(rng);
            B(i, j) = B(j, i) = random_complex(rng);
        }
    const Pencil P(A, B);
    for (auto _ : state) benchmark::DoNotOptimize(discriminant(P));
}
BENCHMARK(BM_Discriminant)->Arg(4)->Arg(8)->Arg(11);

void BM_Theta(benchmark::State& state, ThetaMode mode) {
    Rng rng(3);
    const auto X = random_variety(rng, static_cast<int>(state.range(0)));
    const auto S = random_regular_point(rng, X, false);
    for (auto _ : state) benchmark::DoNotOptimize(theta(X, S.point, mode));
}
BENCHMARK_CAPTURE(BM_Theta, closed, ThetaMode::Closed)->Arg(3)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_Theta, brute, ThetaMode::Brute)->Arg(3)->Arg(5)->Arg(8);

void BM_SolveSigma(benchmark::State& state) {
    Rng rng(4);
    const int n = static_cast<int>(state.range(0));
    const auto X = random_variety(rng, n);
    auto avoid = X.lambdas;
    avoid.push_back(0.0);
    const auto base = random_separated(rng, n, 1.0, 0.05, avoid);
    avoid.insert(avoid.end(), base.begin(), base.end());
    auto extra = random_separated(rng, n - 1, 1.0, 0.05, avoid);
    extra.insert(extra.begin(), base[0]);
    const auto samples = samples_from_variety(X, base, {extra}, {}, 5);
    for (auto _ : state) benchmark::DoNotOptimize(solve_sigma(samples, n));
}
BENCHMARK(BM_SolveSigma)->Arg(5)->Arg(6)->Arg(8);

} // namespace
BENCHMARK_MAIN();
