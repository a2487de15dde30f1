// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include <cmath>

#include "stablab/generator.hpp"
#include "stablab/mollifier.hpp"
#include "stablab/rng.hpp"
#include "stablab/simulator.hpp"
#include "stablab/stable_law.hpp"

namespace {

void BM_StableDensityQuadrature(benchmark::State& state) {
    const auto law = stablab::make_stable_law(1.5);
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stablab::stable_density(law, x));
        x = std::fmod(x + 0.37, 30.0);
    }
}
BENCHMARK(BM_StableDensityQuadrature);

void BM_DensityTable(benchmark::State& state) {
    const auto law = stablab::make_stable_law(1.5);
    const auto table = stablab::density_table(law);
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize((*table)(x));
        x = std::fmod(x + 0.37, 60.0);
    }
}
BENCHMARK(BM_DensityTable);

void BM_SampleIncrement(benchmark::State& state) {
    const auto law = stablab::make_stable_law(1.5);
    stablab::RngStream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(stablab::sample_increment(law, 1e-3, rng));
}
BENCHMARK(BM_SampleIncrement);

void BM_GeneratorCosine(benchmark::State& state) {
    const auto law = stablab::make_stable_law(1.5);
    stablab::SmoothFunction f;
    f.value = [](double x) { return std::cos(x); };
    f.first = [](double x) { return -std::sin(x); };
    f.second = [](double x) { return -std::cos(x); };
    f.far_field = stablab::BoundedGrowth{1.0};
    for (auto _ : state) benchmark::DoNotOptimize(stablab::generator_apply(law, f, 0.3));
}
BENCHMARK(BM_GeneratorCosine);

void BM_SmoothedDistanceCached(benchmark::State& state) {
    const auto s = stablab::make_smoothed_distance(stablab::build_mollifier(1.5, 0.1, 4.0));
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.u_prime(x));
        x = x > 1.0 ? -1.0 : x + 0.013;
    }
}
BENCHMARK(BM_SmoothedDistanceCached);

void BM_CoupledEuler(benchmark::State& state) {
    const auto law = stablab::make_stable_law(1.5);
    stablab::PairSpec spec;
    spec.drift = {stablab::DriftKind::tanh, 1.0, 0.0};
    spec.jump = {stablab::JumpKind::cosine, 1.0, 0.2, 1.0};
    spec.x0_gap = 0.01;
    const auto pair = stablab::make_pair(spec, 1.5);
    stablab::SimConfig cfg;
    cfg.n_steps = 100;
    cfg.n_paths = static_cast<std::size_t>(state.range(0));
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(stablab::simulate_coupled(cfg, pair, law).grid_sup(0));
    state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.n_steps);
}
BENCHMARK(BM_CoupledEuler)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
