#pragma once

#include <string>
#include <vector>

#include "mmsense/loss_channel.hpp"
#include "mmsense/metrology.hpp"

namespace mmsense::sweep {

struct StatePair {
  int m = 1;
  int mprime = 0;
};

// One row of the comparison table; `error` is set (and the numeric fields are
// meaningless) when that row's configuration was rejected.
struct TableRecord {
  int m = 0;
  int mprime = 0;
  double visibility = 0.0;
  double delta_phi_min = 0.0;
  double heisenberg = 0.0;
  double shot_noise = 0.0;
  std::string error;
  bool ok() const { return error.empty(); }
};

struct TableResult {
  double long_arm_loss = 0.0;   // L_b
  double delay_arm_loss = 0.0;  // L_a
  std::vector<TableRecord> records;
};

// The probe states compared in the reference table.
std::vector<StatePair> default_table_rows();

// Visibility and best detectable phase per state at the given losses
// (fractions; dB conversion is a CLI concern). Invalid rows are reported in
// their record's `error` and do not abort the remaining rows.
TableResult run_table(double long_arm_loss, double delay_arm_loss,
                      const std::vector<StatePair>& rows);

// Inclusive linear grid over phase values.
struct PhiGrid {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;  // number of samples, >= 2; max > min

  void validate() const;
  std::vector<double> values() const;
  // One fringe period [0, 2*pi/fringe_order) sampled with `steps` points.
  static PhiGrid fringe_period(int fringe_order, int steps = 1024);
};

// Inclusive loss grid [start, stop] stepped by `step`, all within [0, 1].
struct LossRange {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;

  void validate() const;
  std::vector<double> values() const;
};

// CLI-facing sweep description, validated as a whole.
struct SweepSpec {
  std::vector<StatePair> states;
  LossRange loss_a;
  LossRange loss_b;
  PhiGrid phi;
  std::string out_path;          // empty = stdout
  std::string format = "csv";    // csv | json

  void validate() const;
};

// delta_phi(phi) for the M&M probe and the photon-number-matched N00N probe
// (N = m - m') under the same losses, with the benchmark limits.
struct SensitivityCurve {
  LossyInterferometer config_mm;
  LossyInterferometer config_noon;
  std::vector<double> phi;
  std::vector<double> delta_phi_mm;
  std::vector<double> delta_phi_noon;
  double heisenberg_mm = 0.0;
  double shot_noise_mm = 0.0;
  double shot_noise_noon = 0.0;
  double lossless_limit = 0.0;
};

SensitivityCurve sensitivity_curve(const LossyInterferometer& config, const PhiGrid& grid);

// <A>(phi) for the same M&M / N00N pair.
struct ResolutionCurve {
  LossyInterferometer config_mm;
  LossyInterferometer config_noon;
  std::vector<double> phi;
  std::vector<double> expectation_mm;
  std::vector<double> expectation_noon;
};

ResolutionCurve resolution_curve(const LossyInterferometer& config, const PhiGrid& grid);

// Fundamental visibility over a loss-loss grid; visibility[i][j] pairs
// loss_a[i] with loss_b[j].
struct VisibilityGrid {
  int m = 0;
  int mprime = 0;
  std::vector<double> loss_a;
  std::vector<double> loss_b;
  std::vector<std::vector<double>> visibility;
};

VisibilityGrid visibility_grid(int m, int mprime, const LossRange& range_a,
                               const LossRange& range_b);

// Closed-form vs brute-force cross-check over random loss/phase draws.
struct VerifyCase {
  int m = 0;
  int mprime = 0;
  double max_abs_diff = 0.0;
};

struct VerifyReport {
  int max_m = 0;
  int samples = 0;         // per (m, m') pair
  unsigned long long seed = 0;
  double tolerance = 0.0;
  std::vector<VerifyCase> cases;
  double max_abs_diff = 0.0;
  bool pass = false;
};

// Draws `samples` random (T_a, T_b, phases, phi) per pair (m <= max_m,
// m' < m) and compares the closed form against the four-mode brute force.
// Deterministic for a fixed seed. max_m is bounded by the brute-force limit.
VerifyReport verify(int max_m, int samples, unsigned long long seed,
                    double tolerance = 1e-10);

}  // namespace mmsense::sweep
