#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "porohyst/assembly.hpp"
#include "porohyst/play.hpp"
#include "porohyst/preisach.hpp"
#include "porohyst/simulation_state.hpp"
#include "porohyst/stepper.hpp"

using namespace porohyst;

namespace {

// Gravity, decay density, Robin exchange on the left; `nodes` per axis.
Scenario bench_scenario(std::size_t dimension, std::size_t nodes) {
  Scenario s;
  if (dimension == 1) {
    s.mesh = {1, {1.0}, {nodes}};
    s.gravity = {true, {1.0}};
    s.u0 = {InitialFieldSpec::Kind::linear, 0.5, {-1.0}, {}};
  } else {
    s.mesh = {2, {1.0, 1.0}, {nodes, nodes}};
    s.gravity = {true, {0.0, -1.0}};
    s.u0 = {InitialFieldSpec::Kind::linear, 0.5, {0.0, -1.0}, {}};
  }
  s.density.kind = DecayDensity{4.0, 0.5};
  s.boundary.bstar = {1.0, 0.0, 0.0, 0.0};
  s.boundary.ustar = {ExteriorPressureSpec::Kind::constant, 0.8, {}, {}};
  s.v0 = s.u0;
  s.stepper.T = 0.01;
  s.stepper.tau = 0.01;
  return s;
}

void BM_PlayUpdate(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> inputs(1024);
  for (double& u : inputs) u = dist(rng);
  double xi = 0.0;
  std::size_t i = 0;
  for (auto _ : state) {
    xi = play_clamp(xi, inputs[i++ & 1023], 0.3);
    benchmark::DoNotOptimize(xi);
  }
}
BENCHMARK(BM_PlayUpdate);

void BM_MemoryUpdate(benchmark::State& state) {
  const auto thresholds = static_cast<std::size_t>(state.range(0));
  const ThresholdGrid grid(2.0, thresholds);
  MemoryState memory(256, thresholds);
  Field input(256, 0.0);
  double level = 0.0;
  for (auto _ : state) {
    level = level > 1.0 ? -1.0 : level + 0.1;
    std::fill(input.begin(), input.end(), level);
    memory = update_memory(memory, input, grid);
    benchmark::DoNotOptimize(memory);
  }
  state.SetItemsProcessed(state.iterations() * 256 * static_cast<std::int64_t>(thresholds));
}
BENCHMARK(BM_MemoryUpdate)->Arg(64)->Arg(512);

void BM_ResidualAssembly(benchmark::State& state) {
  const Problem problem(bench_scenario(static_cast<std::size_t>(state.range(0)),
                                       static_cast<std::size_t>(state.range(1))));
  const SimulationState start = initial_state(problem);
  const StepInputs step{start.memory, start.theta, start.v, 0.01, 0.01};
  Field u = start.u;
  for (double& value : u) value += 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_residual(problem, u, step));
}
BENCHMARK(BM_ResidualAssembly)->Args({1, 64})->Args({1, 1024})->Args({2, 32});

void BM_JacobianAssembly(benchmark::State& state) {
  const Problem problem(bench_scenario(static_cast<std::size_t>(state.range(0)),
                                       static_cast<std::size_t>(state.range(1))));
  const SimulationState start = initial_state(problem);
  const StepInputs step{start.memory, start.theta, start.v, 0.01, 0.01};
  for (auto _ : state) benchmark::DoNotOptimize(assemble_jacobian(problem, start.u, step));
}
BENCHMARK(BM_JacobianAssembly)->Args({1, 64})->Args({2, 32});

void BM_SolveStep(benchmark::State& state) {
  const Problem problem(bench_scenario(static_cast<std::size_t>(state.range(0)),
                                       static_cast<std::size_t>(state.range(1))));
  const SimulationState start = initial_state(problem);
  for (auto _ : state) benchmark::DoNotOptimize(solve_step(problem, start, problem.stepper()));
}
BENCHMARK(BM_SolveStep)->Args({1, 64})->Args({1, 1024})->Args({2, 32});

}  // namespace
BENCHMARK_MAIN();
