#include "mmsense/sweep.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "mmsense/oracle.hpp"

namespace mmsense::sweep {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Deterministic uniform double in [0, 1), independent of library
// distribution internals.
double next_uniform(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<StatePair> default_table_rows() {
  return {{10, 0}, {11, 1}, {12, 2}, {14, 4}, {16, 6}, {18, 8}, {20, 10}};
}

TableResult run_table(double long_arm_loss, double delay_arm_loss,
                      const std::vector<StatePair>& rows) {
  // Bad losses are a caller error and fail the whole call; only per-row
  // (state) problems are isolated into their record.
  const ArmLoss arm_a = ArmLoss::from_loss(delay_arm_loss);
  const ArmLoss arm_b = ArmLoss::from_loss(long_arm_loss);
  TableResult result{long_arm_loss, delay_arm_loss, {}};
  result.records.reserve(rows.size());
  for (const StatePair& row : rows) {
    TableRecord record;
    record.m = row.m;
    record.mprime = row.mprime;
    try {
      const LossyInterferometer config{row.m, row.mprime, arm_a, arm_b, 0.0};
      config.validate();
      const MetrologyLimits bounds = limits(row.m, row.mprime);
      record.heisenberg = bounds.heisenberg;
      record.shot_noise = bounds.shot_noise;
      record.visibility = fundamental_visibility(config);
      const DetectionScheme scheme(detection_operator(row.m, row.mprime));
      record.delta_phi_min =
          min_phase_sensitivity(SensitivityModel(FringeForm(config), scheme)).delta_phi;
    } catch (const std::exception& e) {
      record.error = e.what();
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

void PhiGrid::validate() const {
  if (steps < 2) throw std::invalid_argument("PhiGrid: needs at least 2 steps, got " + std::to_string(steps));
  if (!(max > min)) throw std::invalid_argument("PhiGrid: needs max > min");
  if (!std::isfinite(min) || !std::isfinite(max)) throw std::invalid_argument("PhiGrid: bounds must be finite");
}

std::vector<double> PhiGrid::values() const {
  validate();
  std::vector<double> grid(steps);
  const double h = (max - min) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid[i] = min + i * h;
  return grid;
}

PhiGrid PhiGrid::fringe_period(int fringe_order, int steps) {
  if (fringe_order < 1) throw std::invalid_argument("PhiGrid: fringe_order must be >= 1");
  const double period = kTwoPi / fringe_order;
  return PhiGrid{0.0, period * (steps - 1.0) / steps, steps};
}

void LossRange::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("LossRange: step must be > 0");
  if (!(start <= stop)) throw std::invalid_argument("LossRange: needs start <= stop");
  if (start < 0.0 || stop > 1.0) throw std::invalid_argument("LossRange: losses must lie in [0, 1]");
}

std::vector<double> LossRange::values() const {
  validate();
  std::vector<double> grid;
  const int count = int(std::floor((stop - start) / step + 1e-9)) + 1;
  grid.reserve(count);
  for (int i = 0; i < count; ++i) grid.push_back(std::min(start + i * step, stop));
  return grid;
}

void SweepSpec::validate() const {
  if (states.empty()) throw std::invalid_argument("SweepSpec: state list is empty");
  for (const StatePair& s : states) {
    if (s.mprime < 0 || s.m <= s.mprime) {
      throw std::invalid_argument("SweepSpec: requires m > m' >= 0, got m=" + std::to_string(s.m) +
                                  " m'=" + std::to_string(s.mprime));
    }
  }
  loss_a.validate();
  loss_b.validate();
  phi.validate();
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("SweepSpec: format must be csv or json, got " + format);
  }
}

SensitivityCurve sensitivity_curve(const LossyInterferometer& config, const PhiGrid& grid) {
  config.validate();
  SensitivityCurve curve;
  curve.config_mm = config;
  curve.config_noon = LossyInterferometer{config.fringe_order(), 0, config.arm_a, config.arm_b,
                                          config.phase};
  curve.phi = grid.values();

  const DetectionScheme scheme_mm(detection_operator(config.m, config.mprime));
  const SensitivityModel model_mm(FringeForm(config), scheme_mm);
  const DetectionScheme scheme_noon(detection_operator(curve.config_noon.m, 0));
  const SensitivityModel model_noon(FringeForm(curve.config_noon), scheme_noon);

  curve.delta_phi_mm.reserve(curve.phi.size());
  curve.delta_phi_noon.reserve(curve.phi.size());
  for (double phi : curve.phi) {
    curve.delta_phi_mm.push_back(model_mm.delta_phi(phi));
    curve.delta_phi_noon.push_back(model_noon.delta_phi(phi));
  }

  const MetrologyLimits bounds_mm = limits(config.m, config.mprime);
  curve.heisenberg_mm = bounds_mm.heisenberg;
  curve.shot_noise_mm = bounds_mm.shot_noise;
  curve.shot_noise_noon = limits(curve.config_noon.m, 0).shot_noise;
  curve.lossless_limit = bounds_mm.lossless_best;
  return curve;
}

ResolutionCurve resolution_curve(const LossyInterferometer& config, const PhiGrid& grid) {
  config.validate();
  ResolutionCurve curve;
  curve.config_mm = config;
  curve.config_noon = LossyInterferometer{config.fringe_order(), 0, config.arm_a, config.arm_b,
                                          config.phase};
  curve.phi = grid.values();

  const ExpectationProfile profile_mm(FringeForm(config),
                                      detection_operator(config.m, config.mprime));
  const ExpectationProfile profile_noon(FringeForm(curve.config_noon),
                                        detection_operator(curve.config_noon.m, 0));
  curve.expectation_mm.reserve(curve.phi.size());
  curve.expectation_noon.reserve(curve.phi.size());
  for (double phi : curve.phi) {
    curve.expectation_mm.push_back(profile_mm.real_value(phi));
    curve.expectation_noon.push_back(profile_noon.real_value(phi));
  }
  return curve;
}

VisibilityGrid visibility_grid(int m, int mprime, const LossRange& range_a,
                               const LossRange& range_b) {
  VisibilityGrid grid;
  grid.m = m;
  grid.mprime = mprime;
  grid.loss_a = range_a.values();
  grid.loss_b = range_b.values();
  grid.visibility.resize(grid.loss_a.size());
  for (std::size_t i = 0; i < grid.loss_a.size(); ++i) {
    grid.visibility[i].resize(grid.loss_b.size());
    for (std::size_t j = 0; j < grid.loss_b.size(); ++j) {
      const LossyInterferometer config{m, mprime, ArmLoss::from_loss(grid.loss_a[i]),
                                       ArmLoss::from_loss(grid.loss_b[j]), 0.0};
      grid.visibility[i][j] = fundamental_visibility(config);
    }
  }
  return grid;
}

VerifyReport verify(int max_m, int samples, unsigned long long seed, double tolerance) {
  if (max_m < 1 || max_m > oracle::kMaxPhotons) {
    throw std::invalid_argument("verify: max_m must lie in [1, " +
                                std::to_string(oracle::kMaxPhotons) + "], got " +
                                std::to_string(max_m));
  }
  if (samples < 1) throw std::invalid_argument("verify: samples must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("verify: tolerance must be > 0");

  VerifyReport report;
  report.max_m = max_m;
  report.samples = samples;
  report.seed = seed;
  report.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  for (int m = 1; m <= max_m; ++m) {
    for (int mprime = 0; mprime < m; ++mprime) {
      VerifyCase test_case{m, mprime, 0.0};
      for (int draw = 0; draw < samples; ++draw) {
        const double loss_a = next_uniform(rng);
        const double loss_b = next_uniform(rng);
        const double phase_a = kTwoPi * next_uniform(rng);
        const double phase_b = kTwoPi * next_uniform(rng);
        const double refl_a = kTwoPi * next_uniform(rng);
        const double refl_b = kTwoPi * next_uniform(rng);
        const double phi = kTwoPi * next_uniform(rng);
        const LossyInterferometer config{m, mprime,
                                         ArmLoss{1.0 - loss_a, phase_a, refl_a},
                                         ArmLoss{1.0 - loss_b, phase_b, refl_b}, phi};
        const DensityMatrix closed = reduced_density_matrix(config);
        const DensityMatrix brute = oracle::reduced_density_matrix(config);
        const double diff = (closed.matrix() - brute.matrix()).cwiseAbs().maxCoeff();
        test_case.max_abs_diff = std::max(test_case.max_abs_diff, diff);
      }
      report.max_abs_diff = std::max(report.max_abs_diff, test_case.max_abs_diff);
      report.cases.push_back(test_case);
    }
  }
  report.pass = report.max_abs_diff <= tolerance;
  return report;
}

}  // namespace mmsense::sweep
