// Acceptance checks for the lossy two-arm interferometer model. Each criterion
// prints exactly one PASS/FAIL line with its pinned tolerances; the process
// exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mmsense/metrology.hpp"
#include "mmsense/oracle.hpp"
#include "mmsense/sweep.hpp"

using namespace mmsense;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

std::string strprintf(const char* fmt, ...) {
  char buffer[768];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buffer, sizeof(buffer), fmt, args);
  va_end(args);
  return buffer;
}

double next_uniform(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Positivity / trace / hermiticity bookkeeping shared by criteria 1-3 and
// reported by criterion 4.
struct InvariantStats {
  double max_trace_error = 0.0;
  double max_herm_error = 0.0;
  double min_eigenvalue = 1.0;
  long long states = 0;
  long long eigen_checked = 0;

  void absorb(const DensityMatrix& rho, bool with_eigenvalues) {
    ++states;
    max_trace_error = std::max(max_trace_error, rho.trace_error());
    max_herm_error = std::max(max_herm_error, rho.hermiticity_error());
    if (with_eigenvalues) {
      ++eigen_checked;
      min_eigenvalue = std::min(min_eigenvalue, rho.min_eigenvalue());
    }
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int run_criterion(int index, const std::function<Outcome()>& body) {
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, strprintf("unexpected exception: %s", e.what())};
  }
  std::printf("%s  %d. %s\n", outcome.pass ? "PASS" : "FAIL", index, outcome.detail.c_str());
  std::fflush(stdout);
  return outcome.pass ? 0 : 1;
}

Outcome criterion_table(InvariantStats& stats) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<sweep::StatePair> rows = sweep::default_table_rows();
  const sweep::TableResult table = sweep::run_table(0.5, 0.0, rows);

  const double expected_vis_pct[7] = {3.13, 6.74, 10.96, 19.85, 28.11, 35.19, 41.11};
  const double expected_dphi[7] = {2.264, 1.051, 0.652, 0.372, 0.279, 0.238, 0.254};

  bool all_ok = table.records.size() == 7;
  double max_vis_dev = 0.0, max_dphi_dev = 0.0, max_limit_dev = 0.0;
  for (std::size_t i = 0; i < table.records.size() && all_ok; ++i) {
    const sweep::TableRecord& r = table.records[i];
    if (!r.ok()) {
      all_ok = false;
      break;
    }
    max_vis_dev = std::max(max_vis_dev, std::abs(100.0 * r.visibility - expected_vis_pct[i]));
    max_dphi_dev = std::max(max_dphi_dev, std::abs(r.delta_phi_min - expected_dphi[i]));
    const int total = r.m + r.mprime;
    max_limit_dev = std::max(max_limit_dev, std::abs(r.heisenberg - 1.0 / total));
    max_limit_dev = std::max(max_limit_dev, std::abs(r.shot_noise - 1.0 / std::sqrt(total)));
  }
  const double elapsed = seconds_since(start);

  // Invariants of the seven table states, probed at several phase points.
  for (const sweep::StatePair& row : rows) {
    const LossyInterferometer config{row.m, row.mprime, ArmLoss{1.0}, ArmLoss{0.5}, 0.0};
    const FringeForm form(config);
    const int n = row.m - row.mprime;
    for (double phi : {0.0, kPi / (2.0 * n), 1.234}) {
      stats.absorb(form.density_matrix(phi), true);
    }
  }

  const bool pass = all_ok && max_vis_dev <= 0.05 && max_dphi_dev <= 0.005 &&
                    max_limit_dev <= 0.0005 && elapsed < 10.0;
  return {pass,
          strprintf("comparison table at long-arm loss 0.5: max |dV| %.4f pp (tol 0.05), "
                    "max |d delta_phi| %.5f (tol 0.005), max limit dev %.1e (tol 5e-4), "
                    "%.2f s (budget 10 s)",
                    max_vis_dev, max_dphi_dev, max_limit_dev, elapsed)};
}

Outcome criterion_noon_closed_form(InvariantStats& stats) {
  const double transmittances[4] = {0.25, 0.5, 0.75, 1.0};
  const int phi_points = 256;
  double max_dev = 0.0;
  long long checked = 0;
  for (int n = 1; n <= 10; ++n) {
    const FockOperator op = detection_operator(n, 0);
    for (double ta : transmittances) {
      for (double tb : transmittances) {
        for (int i = 0; i < phi_points; ++i) {
          const double phi = kTwoPi * i / phi_points;
          const DensityMatrix rho = noon_density_matrix(n, ArmLoss{ta}, ArmLoss{tb}, phi);
          const double expected = std::pow(ta * tb, n / 2.0) * std::cos(n * phi);
          max_dev = std::max(max_dev, std::abs(expectation(op, rho) - Complex{expected, 0.0}));
          ++checked;
          stats.absorb(rho, i % 128 == 0);  // eigenvalues are phase-independent
        }
      }
    }
  }
  const bool pass = max_dev < 1e-12 && checked == 10LL * 16 * 256;
  return {pass, strprintf("N00N fringe <A_N> = (T_a T_b)^{N/2} cos(N phi): max dev %.2e "
                          "(tol 1e-12) over %lld points (N 1..10, 4x4 T grid, 256 phi)",
                          max_dev, checked)};
}

Outcome criterion_oracle(InvariantStats& stats) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260825ULL);
  double max_diff = 0.0;
  long long draws = 0;
  for (int m = 1; m <= 4; ++m) {
    for (int mprime = 0; mprime < m; ++mprime) {
      for (int sample = 0; sample < 12; ++sample) {
        const double loss_a = next_uniform(rng);
        const double loss_b = next_uniform(rng);
        const double phase_a = kTwoPi * next_uniform(rng);
        const double phase_b = kTwoPi * next_uniform(rng);
        const double refl_a = kTwoPi * next_uniform(rng);
        const double refl_b = kTwoPi * next_uniform(rng);
        const double phi = kTwoPi * next_uniform(rng);
        const LossyInterferometer config{m, mprime, ArmLoss{1.0 - loss_a, phase_a, refl_a},
                                         ArmLoss{1.0 - loss_b, phase_b, refl_b}, phi};
        const DensityMatrix closed = reduced_density_matrix(config);
        const DensityMatrix brute = oracle::reduced_density_matrix(config);
        max_diff =
            std::max(max_diff, (closed.matrix() - brute.matrix()).cwiseAbs().maxCoeff());
        ++draws;
        stats.absorb(closed, true);
        stats.absorb(brute, true);
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = draws >= 100 && max_diff <= 1e-10 && elapsed < 60.0;
  return {pass, strprintf("closed form vs four-mode brute force: max element dev %.2e "
                          "(tol 1e-10) over %lld seeded draws (m <= 4), %.2f s (budget 60 s)",
                          max_diff, draws, elapsed)};
}

Outcome criterion_invariants(const InvariantStats& stats) {
  const bool pass = stats.states > 0 && stats.max_trace_error <= 1e-10 &&
                    stats.max_herm_error <= 1e-12 && stats.min_eigenvalue >= -1e-10;
  return {pass, strprintf("density-matrix invariants over criteria 1-3: trace dev %.2e "
                          "(tol 1e-10), hermiticity dev %.2e (tol 1e-12), min eigenvalue "
                          "%.2e (tol -1e-10); %lld states, %lld eigen-checked",
                          stats.max_trace_error, stats.max_herm_error, stats.min_eigenvalue,
                          stats.states, stats.eigen_checked)};
}

Outcome criterion_thresholds() {
  const std::optional<double> noon = loss_threshold_to_snl(10, 0, 0.0);
  const std::optional<double> mm = loss_threshold_to_snl(20, 10, 0.0);
  const bool pass = noon.has_value() && *noon >= 0.25 && *noon <= 0.27 && mm.has_value() &&
                    *mm >= 0.39 && *mm <= 0.41;
  return {pass, strprintf("shot-noise loss budgets: |10::0> threshold %.4f (window "
                          "[0.25, 0.27]), |20::10> threshold %.4f (window [0.39, 0.41])",
                          noon ? *noon : -1.0, mm ? *mm : -1.0)};
}

Outcome criterion_resolution() {
  const LossyInterferometer config{20, 10, ArmLoss{1.0}, ArmLoss{0.5}, 0.0};
  const sweep::ResolutionCurve curve =
      sweep::resolution_curve(config, sweep::PhiGrid::fringe_period(10, 512));
  const double amp_mm = curve.expectation_mm.front();
  const double amp_noon = curve.expectation_noon.front();
  double max_shape_dev = 0.0;
  for (std::size_t i = 0; i < curve.phi.size(); ++i) {
    const double c = std::cos(10.0 * curve.phi[i]);
    max_shape_dev = std::max(max_shape_dev, std::abs(curve.expectation_mm[i] - amp_mm * c));
    max_shape_dev = std::max(max_shape_dev, std::abs(curve.expectation_noon[i] - amp_noon * c));
  }
  const bool pass = std::abs(amp_mm - 0.4111) <= 0.001 && std::abs(amp_noon - 0.03125) <= 1e-6 &&
                    max_shape_dev <= 1e-9;
  return {pass, strprintf("fringe amplitudes at 50%% long-arm loss: |20::10> %.6f "
                          "(0.4111 +/- 0.001), |10::0> %.8f (0.03125 +/- 1e-6), cos(10 phi) "
                          "shape dev %.1e (tol 1e-9)",
                          amp_mm, amp_noon, max_shape_dev)};
}

Outcome criterion_lossless() {
  const std::vector<sweep::StatePair> states = {{10, 0}, {11, 1}, {12, 2}, {14, 4}, {16, 6},
                                                {18, 8}, {20, 10}, {1, 0}, {2, 1}, {4, 2},
                                                {9, 8}, {25, 5}};
  double max_dphi_dev = 0.0, max_vis_dev = 0.0;
  for (const sweep::StatePair& s : states) {
    const LossyInterferometer config{s.m, s.mprime, ArmLoss{1.0}, ArmLoss{1.0}, 0.0};
    max_vis_dev = std::max(max_vis_dev, std::abs(fundamental_visibility(config) - 1.0));
    const MinSensitivity best =
        min_phase_sensitivity(config, detection_operator(s.m, s.mprime));
    max_dphi_dev =
        std::max(max_dphi_dev, std::abs(best.delta_phi - 1.0 / (s.m - s.mprime)));
  }
  const bool pass = max_dphi_dev <= 1e-9 && max_vis_dev <= 1e-12;
  return {pass, strprintf("lossless limits over %zu states: max |delta_phi_min - 1/(m-m')| "
                          "%.2e (tol 1e-9), max |V_f - 1| %.2e (tol 1e-12)",
                          states.size(), max_dphi_dev, max_vis_dev)};
}

Outcome criterion_properties() {
  std::mt19937_64 rng(4242ULL);

  // (a) A truncated detection operator never reads more visibility than V_f.
  double max_excess = -1.0;
  long long truncation_checks = 0;
  for (auto [m, mprime] : {std::pair{3, 1}, {4, 2}, {5, 4}}) {
    const std::vector<DyadTerm> dyads = detection_dyads(m, mprime);
    for (int trial = 0; trial < 5; ++trial) {
      const LossyInterferometer config{m, mprime, ArmLoss{next_uniform(rng)},
                                       ArmLoss{next_uniform(rng)}, 0.0};
      const double vf = fundamental_visibility(config);
      for (std::size_t cut = 2; cut <= dyads.size(); cut += 2) {
        const std::vector<DyadTerm> subset(dyads.begin(), dyads.begin() + cut);
        const double vdet = detection_visibility(config, dyad_sum(TwoModeBasis(m), subset));
        max_excess = std::max(max_excess, vdet - vf);
        ++truncation_checks;
      }
    }
  }

  // (b) V_f is monotone non-increasing in each arm's loss.
  double max_increase = -1.0;
  for (auto [m, mprime] : {std::pair{3, 1}, {5, 2}, {20, 10}}) {
    for (int arm = 0; arm < 2; ++arm) {
      double previous = 2.0;
      for (int i = 0; i <= 10; ++i) {
        const ArmLoss swept = ArmLoss::from_loss(i / 10.0);
        const ArmLoss fixed{0.8};
        const LossyInterferometer config{m, mprime, arm == 0 ? swept : fixed,
                                         arm == 0 ? fixed : swept, 0.0};
        const double v = fundamental_visibility(config);
        if (i > 0) max_increase = std::max(max_increase, v - previous);
        previous = v;
      }
    }
  }

  // (c) Analytic derivative of <A> against the central finite difference.
  double max_rel_dev = 0.0;
  for (auto [m, mprime] : {std::pair{2, 0}, {3, 1}, {5, 2}, {6, 3}}) {
    const FockOperator op = detection_operator(m, mprime);
    for (int trial = 0; trial < 5; ++trial) {
      const LossyInterferometer config{
          m, mprime, ArmLoss{0.2 + 0.8 * next_uniform(rng), kTwoPi * next_uniform(rng),
                             kTwoPi * next_uniform(rng)},
          ArmLoss{0.2 + 0.8 * next_uniform(rng), kTwoPi * next_uniform(rng),
                  kTwoPi * next_uniform(rng)},
          0.0};
      const double phi =
          0.37 * kPi / (m - mprime) - config.arm_b.transmission_phase +
          config.arm_a.transmission_phase;  // keep the fringe argument off its extrema
      const double analytic = expectation_derivative(config, op, phi);
      const double fd = expectation_derivative_fd(config, op, phi);
      max_rel_dev = std::max(
          max_rel_dev, std::abs(analytic - fd) / std::max(std::abs(analytic), std::abs(fd)));
    }
  }

  const bool pass = max_excess <= 1e-12 && max_increase <= 1e-12 && max_rel_dev <= 1e-6;
  return {pass, strprintf("properties: max V_det - V_f %.1e over %lld truncations (tol "
                          "1e-12), max visibility increase with loss %.1e (tol 1e-12), max "
                          "analytic-vs-FD derivative dev %.1e relative (tol 1e-6)",
                          max_excess, truncation_checks, max_increase, max_rel_dev)};
}

}  // namespace

int main() {
  InvariantStats stats;
  int failures = 0;
  failures += run_criterion(1, [&] { return criterion_table(stats); });
  failures += run_criterion(2, [&] { return criterion_noon_closed_form(stats); });
  failures += run_criterion(3, [&] { return criterion_oracle(stats); });
  failures += run_criterion(4, [&] { return criterion_invariants(stats); });
  failures += run_criterion(5, [] { return criterion_thresholds(); });
  failures += run_criterion(6, [] { return criterion_resolution(); });
  failures += run_criterion(7, [] { return criterion_lossless(); });
  failures += run_criterion(8, [] { return criterion_properties(); });
  if (failures == 0) {
    std::printf("all 8 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria failed\n", failures);
  }
  return failures;
}
