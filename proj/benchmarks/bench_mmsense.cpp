#include <benchmark/benchmark.h>

#include "mmsense/combinatorics.hpp"
#include "mmsense/metrology.hpp"
#include "mmsense/oracle.hpp"

using namespace mmsense;

namespace {

constexpr double kPi = 3.14159265358979323846;

LossyInterferometer half_loss_config(int m, int mprime) {
  return LossyInterferometer{m, mprime, ArmLoss{1.0}, ArmLoss{0.5}, 0.0};
}

void BM_GammaCoefficient(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_coefficient(20, 10, 3, 2));
  }
}
BENCHMARK(BM_GammaCoefficient);

void BM_FringeFormConstruction(benchmark::State& state) {
  const LossyInterferometer config = half_loss_config(int(state.range(0)), int(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FringeForm(config));
  }
}
BENCHMARK(BM_FringeFormConstruction)->Args({12, 2})->Args({20, 10});

void BM_ReducedDensityMatrix(benchmark::State& state) {
  const LossyInterferometer config = half_loss_config(int(state.range(0)), int(state.range(1)));
  const FringeForm form(config);
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(form.density_matrix(phi));
    phi += 1e-3;
  }
}
BENCHMARK(BM_ReducedDensityMatrix)->Args({12, 2})->Args({20, 10});

void BM_FundamentalVisibility(benchmark::State& state) {
  const LossyInterferometer config = half_loss_config(20, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fundamental_visibility(config));
  }
}
BENCHMARK(BM_FundamentalVisibility);

void BM_ExpectationProfileEval(benchmark::State& state) {
  const LossyInterferometer config = half_loss_config(20, 10);
  const ExpectationProfile profile(FringeForm(config), detection_operator(20, 10));
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile.real_value(phi));
    phi += 1e-4;
  }
}
BENCHMARK(BM_ExpectationProfileEval);

// Full pipeline: operator square, fringe decomposition, and the minimum search.
void BM_MinSensitivityWithSetup(benchmark::State& state) {
  const LossyInterferometer config = half_loss_config(12, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_phase_sensitivity(config, detection_operator(12, 2)));
  }
}
BENCHMARK(BM_MinSensitivityWithSetup);

// Search cost alone, with the detection scheme and fringe form prebuilt.
void BM_MinSensitivitySearchOnly(benchmark::State& state) {
  const LossyInterferometer config = half_loss_config(20, 10);
  const DetectionScheme scheme(detection_operator(20, 10));
  const SensitivityModel model(FringeForm(config), scheme);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_phase_sensitivity(model));
  }
}
BENCHMARK(BM_MinSensitivitySearchOnly);

void BM_OracleReducedDensityMatrix(benchmark::State& state) {
  const LossyInterferometer config{int(state.range(0)), int(state.range(1)),
                                   ArmLoss{0.9, 0.1, 0.2}, ArmLoss{0.6, 0.3, 0.4}, kPi / 7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::reduced_density_matrix(config));
  }
}
BENCHMARK(BM_OracleReducedDensityMatrix)->Args({2, 1})->Args({4, 2});

}  // namespace

BENCHMARK_MAIN();
