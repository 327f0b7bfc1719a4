#include <benchmark/benchmark.h>

#include "tbell/montecarlo.hpp"
#include "tbell/oracle.hpp"

namespace {

using namespace tbell;

void BM_GateLowFlux(benchmark::State& state) {
  const GateModel model(InterferometerSettings{});
  RandomStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_gate_lowflux(model, rng, BlockingMode::none));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GateLowFlux);

void BM_GateHighFlux(benchmark::State& state) {
  InterferometerSettings s;
  s.mean_photons = 100.0;
  const GateModel model(s);
  RandomStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_gate_highflux(model, rng, BlockingMode::none));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GateHighFlux);

void BM_EstimateRates(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  EngineOptions options;
  options.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_rates(InterferometerSettings{}, trials, FluxMode::low, BlockingMode::none, options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateRates)->Arg(1 << 15)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_GateModelSetup(benchmark::State& state) {
  InterferometerSettings s;
  for (auto _ : state) {
    s.delta_t += 1e-15;
    benchmark::DoNotOptimize(GateModel(s));
  }
}
BENCHMARK(BM_GateModelSetup);

void BM_OracleCoincidence(benchmark::State& state) {
  InterferometerSettings s;
  for (auto _ : state) {
    s.delta_t += 1e-16;
    benchmark::DoNotOptimize(coincidence_full(s));
  }
}
BENCHMARK(BM_OracleCoincidence);

}  // namespace

BENCHMARK_MAIN();
