// Serial reference loops versus the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dtop/sweep.hpp"

namespace {

using namespace dtop;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_BodyMoments(benchmark::State& state) {
  const BodySpec cloud = sample_cone(70.0, 1.7, 0.2, static_cast<std::size_t>(state.range(1)), 9.8,
                                     {0.0, 0.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(body_moments(cloud.points, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_BodyMoments)->ArgsProduct({{0, 1}, {10000, 1000000}})->Unit(benchmark::kMicrosecond);

void BM_SimulateBatch(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SimulationJob> jobs(static_cast<std::size_t>(state.range(1)));
  for (auto& j : jobs) {
    j.config = make_config({1.2, 1.9, 2.4}, 2.0, {0.1 * u(rng), 0.1 * u(rng), -0.5}, {u(rng), u(rng), 2.0},
                           9.8);
    j.initial.omega = {u(rng), u(rng), 10.0};
    j.settings.dt = 1e-3;
    j.settings.steps = 2000;
    j.settings.stride = 2000;
  }
  for (auto _ : state) benchmark::DoNotOptimize(simulate_batch(jobs, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_SimulateBatch)->ArgsProduct({{0, 1}, {16}})->Unit(benchmark::kMillisecond);

void BM_GammaTable(benchmark::State& state) {
  const SymmetricTop top = conical_symmetric_top(70.0, 1.7, 0.2, 0.7071067811865476, 9.8);
  std::vector<double> alphas(static_cast<std::size_t>(state.range(1)));
  for (std::size_t i = 0; i < alphas.size(); ++i) alphas[i] = 100.0 + 0.01 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_table(top, alphas, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_GammaTable)->ArgsProduct({{0, 1}, {100000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
