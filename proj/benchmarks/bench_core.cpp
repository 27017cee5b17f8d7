#include <benchmark/benchmark.h>

#include "oulab/frequency.hpp"

using namespace oulab;

namespace {

void BM_GaussHermiteRule(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(GaussianGrid::build_gamma(1, m));
    }
}
BENCHMARK(BM_GaussHermiteRule)->Arg(16)->Arg(64)->Arg(256);

void BM_IntegrateGamma(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const GaussianGrid g = GaussianGrid::build_gamma(dim, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_gamma([](const Point& p) { return p.norm_sq(); }, g));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_IntegrateGamma)->Args({1, 64})->Args({2, 32})->Args({3, 20});

void BM_SynthesizeField(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const int D = static_cast<int>(state.range(1));
    const int m = static_cast<int>(state.range(2));
    SpectralField u(dim, D);
    SplitMix64 rng(1);
    for (double& c : u.coeffs()) c = rng.next_symmetric();
    const GaussianGrid g = GaussianGrid::build_gamma(dim, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize(u, g));
    }
}
BENCHMARK(BM_SynthesizeField)->Args({1, 16, 32})->Args({2, 8, 16})->Args({3, 8, 20});

void BM_MehlerBackwardEval(benchmark::State& state) {
    const KernelParams kp = KernelParams::centered(3, 0.1);
    const Point x{0.4, -0.2, 0.9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mehler_backward(kp, x));
    }
}
BENCHMARK(BM_MehlerBackwardEval);

void BM_EvolvePotentialStep(benchmark::State& state) {
    SpectralField u(3, 8);
    SplitMix64 rng(2);
    for (double& c : u.coeffs()) c = rng.next_symmetric() * 1e-2;
    Potential V;
    V.kind = Potential::Kind::singular_radial;
    V.q = 2.0;
    V.L = 1.0;
    V.w = [](const Point&) { return 1.0; };
    EvolutionConfig cfg{1e-5, 8, 20};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_potential(u, V, cfg, cfg.dt));
    }
}
BENCHMARK(BM_EvolvePotentialStep);

void BM_FrequencyTracePoint(benchmark::State& state) {
    const double tau = 1e-3;
    SpectralField u(3, 8);
    SplitMix64 rng(3);
    for (double& c : u.coeffs()) c = rng.next_symmetric();
    const GaussianGrid comp = composite_grid(3, 20, tau);
    for (auto _ : state) {
        const double H = H_of_tau(u, tau, comp);
        const double I = I_of_tau(u, tau, comp);
        benchmark::DoNotOptimize(N_of_tau(H, I, tau));
    }
}
BENCHMARK(BM_FrequencyTracePoint);

}  // namespace

BENCHMARK_MAIN();
