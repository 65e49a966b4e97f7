#include "asv/conditionals.hpp"
#include "asv/diagnostics.hpp"
#include "asv/random.hpp"
#include "asv/sampler.hpp"
#include "asv/simulate.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace asv;

namespace {

struct Problem {
    Dataset data;
    PriorConfig prior;
    ParameterState truth;
    LatentPath path;
};

Problem make_problem(Index T, Index k) {
    SimSpec spec;
    spec.design = random_dummy_design(T, k, 0.3, 1);
    spec.truth.beta = VectorXd::Zero(k);
    spec.truth.gamma = VectorXd::Zero(k);
    spec.truth.gamma(0) = -1.0;
    spec.truth.phi = 0.95;
    spec.truth.rho = -0.4;
    spec.truth.sigma2 = 0.09;
    spec.seed = 2;
    const SimulatedData sim = simulate(spec);
    return {to_dataset(sim, spec.design), PriorConfig::defaults(k), spec.truth, sim.path};
}

// Cost per sampler iteration: 1000 iterations per benchmark step.
void BM_SamplerIterations(benchmark::State& state) {
    const Problem p = make_problem(state.range(0), state.range(1));
    McmcConfig mcmc;
    mcmc.n_iterations = 1000;
    mcmc.burn_in = 500;
    mcmc.thin = 1;
    mcmc.store_latent = false;
    for (auto _ : state) {
        ++mcmc.seed;
        benchmark::DoNotOptimize(run_chain(p.data, p.prior, mcmc).draws.data());
    }
    state.SetItemsProcessed(state.iterations() * mcmc.n_iterations);
}
BENCHMARK(BM_SamplerIterations)->Args({1000, 1})->Args({2434, 19})->Unit(benchmark::kMillisecond);

void BM_GammaConditional(benchmark::State& state) {
    const Problem p = make_problem(state.range(0), state.range(1));
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_precision_form(p.truth, p.path, p.data, p.prior).draw(rng).data());
    }
}
BENCHMARK(BM_GammaConditional)->Args({2434, 19})->Unit(benchmark::kMicrosecond);

void BM_PhiRhoSigmaTarget(benchmark::State& state) {
    const Problem p = make_problem(state.range(0), 1);
    const PhiRhoSigmaTarget target(p.truth, p.path, p.data, p.prior);
    double phi = 0.95;
    for (auto _ : state) {
        benchmark::DoNotOptimize(target(phi, -0.4, 0.09));
        phi = phi > 0.96 ? 0.94 : phi + 1e-4;
    }
}
BENCHMARK(BM_PhiRhoSigmaTarget)->Arg(2434)->Unit(benchmark::kMicrosecond);

void BM_InefficiencyFactor(benchmark::State& state) {
    Rng rng(4);
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    double v = 0.0;
    for (double& e : x) {
        v = 0.9 * v + rng.normal();
        e = v;
    }
    for (auto _ : state) benchmark::DoNotOptimize(inefficiency_factor(x));
}
BENCHMARK(BM_InefficiencyFactor)->Arg(15000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
