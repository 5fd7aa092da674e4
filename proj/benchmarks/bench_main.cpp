#include <benchmark/benchmark.h>

#include "tailsitter/simharness.hpp"

using namespace tailsitter;

namespace {

const VehicleParams P = VehicleParams::reference();

void BM_Rk4StepAugmented(benchmark::State& st) {
  const EquilibriumPoint eq = hover_equilibrium(P);
  InertialState x = eq.x_eq;
  x.v = Vec3(1, 0, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(rk4_step(x, eq.u_eq, Vec3::Zero(), 1e-3, P, Model::Augmented));
}
BENCHMARK(BM_Rk4StepAugmented);

void BM_HoverStep(benchmark::State& st) {
  InertialState x;
  x.q = UnitQuat(0.90, 0.19, 0.36, 0.15).normalized();
  const HoverCtlState ctl = HoverCtlState::init(x, P);
  const HoverGains g;
  for (auto _ : st) benchmark::DoNotOptimize(hover_step(x, ctl, Vec3(5, 5, 5), std::nullopt, 1e-3, g, P));
}
BENCHMARK(BM_HoverStep);

void BM_FlightStep(benchmark::State& st) {
  InertialState x;
  x.v = Vec3(14.142, 0, 14.142);
  x.q = UnitQuat(0.93452, 0, -0.35592, 0).normalized();
  const FlightCtlState ctl = FlightCtlState::from_physical({599, 599, -0.102, -0.102}, P);
  const FlightGains g;
  for (auto _ : st) benchmark::DoNotOptimize(flight_step(x, ctl, Vec3(1000, 0, 1000), 20.0, Vec3::Zero(), 1e-3, g, P));
}
BENCHMARK(BM_FlightStep);

void BM_SolveCareHover(benchmark::State& st) {
  const LinearModel lm = linearize_analytic_hover(P);
  const LqrWeights w = LqrDiagonalWeights{}.hover();
  for (auto _ : st) benchmark::DoNotOptimize(solve_care(lm.A, lm.B, w));
}
BENCHMARK(BM_SolveCareHover)->Unit(benchmark::kMicrosecond);

void BM_ScenarioHover555(benchmark::State& st) {
  Scenario s = load_scenario(TAILSITTER_SCENARIO_DIR "/hover_555.yaml");
  s.t_end = 2.0;
  for (auto _ : st) benchmark::DoNotOptimize(run_scenario(s, P));
}
BENCHMARK(BM_ScenarioHover555)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
