#include <benchmark/benchmark.h>

#include "rtmix/energetics.hpp"
#include "rtmix/extensions.hpp"
#include "rtmix/hull.hpp"
#include "rtmix/selection.hpp"
#include "rtmix/verify.hpp"
#include "rtmix/wave_cone.hpp"

namespace {

using namespace rtmix;

void BM_Classify(benchmark::State& st) {
  Rng rng(7);
  EnergyAtPoint e;
  const StateVector z = random_closure_state(rng, static_cast<int>(st.range(0)), ClosureKind::interior, e);
  for (auto _ : st) benchmark::DoNotOptimize(classify(z, e));
}
BENCHMARK(BM_Classify)->Arg(2)->Arg(3);

void BM_InLambda(benchmark::State& st) {
  Rng rng(8);
  const StateVector z = muskat_direction(random_state(rng, static_cast<int>(st.range(0)), 0.9));
  for (auto _ : st) benchmark::DoNotOptimize(in_lambda(z));
}
BENCHMARK(BM_InLambda)->Arg(2)->Arg(3);

void BM_PerturbationDirection(benchmark::State& st) {
  Rng rng(9);
  EnergyAtPoint e;
  const StateVector z = random_closure_state(rng, 2, ClosureKind::boundary_U0, e);
  for (auto _ : st) benchmark::DoNotOptimize(perturbation_direction(z, e));
}
BENCHMARK(BM_PerturbationDirection);

void BM_WaveSample(benchmark::State& st) {
  const WaveField w = wave_fixture(st.range(0) == 2 ? WaveKind::density : WaveKind::euler3d,
                                   static_cast<int>(st.range(0)), 20);
  Vec x = Vec::Constant(w.dim(), 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(w.sample(x, 0.2));
}
BENCHMARK(BM_WaveSample)->Arg(2)->Arg(3);

void BM_EnergyDeficit(benchmark::State& st) {
  const PhysicalParams p;
  const GrowthRate a = GrowthRate::quadratic(1.0 / 3.0);
  const Profile f({0.05, -0.02});
  for (auto _ : st) benchmark::DoNotOptimize(energy_deficit(f, a, 1.0 / 3.0, 0.9, p));
}
BENCHMARK(BM_EnergyDeficit);

void BM_IPair(benchmark::State& st) {
  const Profile f({0.05, -0.02, 0.01});
  for (auto _ : st) benchmark::DoNotOptimize(I1_I2(f));
}
BENCHMARK(BM_IPair);

void BM_SolveRotation(benchmark::State& st) {
  const PhysicalParams p;
  for (auto _ : st) benchmark::DoNotOptimize(solve_rotation(p).T_tilde);
}
BENCHMARK(BM_SolveRotation)->Unit(benchmark::kMillisecond);

void BM_SelectionSingleRestart(benchmark::State& st) {
  SelectionOptions opt;
  opt.basis_size = static_cast<int>(st.range(0));
  opt.restarts = 1;
  for (auto _ : st) benchmark::DoNotOptimize(minimize(opt).J4_star);
}
BENCHMARK(BM_SelectionSingleRestart)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
