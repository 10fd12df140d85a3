#include "mmsense/metrology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmsense {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kScanPoints = 512;
constexpr double kPhiTolerance = 1e-8;
constexpr double kLossTolerance = 1e-4;

void check_pair(int m, int mprime, const char* where) {
  if (mprime < 0 || m <= mprime) {
    throw std::invalid_argument(std::string(where) + ": requires m > m' >= 0, got m=" +
                                std::to_string(m) + " m'=" + std::to_string(mprime));
  }
}

// Golden-section minimization of f over [lo, hi] down to width kPhiTolerance.
template <typename F>
MinSensitivity golden_minimize(F&& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kPhiTolerance) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {mid, f(mid)};
}

}  // namespace

MetrologyLimits limits(int m, int mprime) {
  check_pair(m, mprime, "limits");
  const double total = m + mprime;
  return {1.0 / total, 1.0 / std::sqrt(total), 1.0 / double(m - mprime)};
}

std::vector<DyadTerm> detection_dyads(int m, int mprime) {
  check_pair(m, mprime, "detection_dyads");
  std::vector<DyadTerm> terms;
  terms.reserve(2 * (mprime + 1) * (mprime + 1));
  for (int r = 0; r <= mprime; ++r) {
    for (int s = 0; s <= mprime; ++s) {
      terms.push_back({{mprime - r, m - s}, {m - r, mprime - s}, Complex{1.0, 0.0}});
      terms.push_back({{m - r, mprime - s}, {mprime - r, m - s}, Complex{1.0, 0.0}});
    }
  }
  return terms;
}

FockOperator detection_operator(int m, int mprime) {
  return detection_operator(m, mprime, TwoModeBasis(m));
}

FockOperator detection_operator(int m, int mprime, TwoModeBasis basis) {
  check_pair(m, mprime, "detection_operator");
  if (m > basis.n_max()) {
    throw std::invalid_argument("detection_operator: m=" + std::to_string(m) +
                                " exceeds basis n_max=" + std::to_string(basis.n_max()));
  }
  return dyad_sum(basis, detection_dyads(m, mprime));
}

DetectionScheme::DetectionScheme(FockOperator op) : op_(op), op_squared_(op.squared()) {}

ExpectationProfile::ExpectationProfile(const FringeForm& form, const FockOperator& op)
    : fringe_order_(form.fringe_order()),
      offset_(form.phase_offset()),
      base_(0.0, 0.0),
      coh_plus_(0.0, 0.0),
      coh_minus_(0.0, 0.0) {
  if (!(op.basis() == form.basis())) {
    throw std::invalid_argument("ExpectationProfile: operator basis does not match the state");
  }
  const Matrix& o = op.matrix();
  for (const DiagonalTerm& term : form.diagonal_terms()) {
    base_ += term.weight * o(term.index, term.index);
  }
  // Tr[O |row><col|] = O(col, row)
  for (const CoherenceTerm& term : form.coherence_terms()) {
    coh_plus_ += term.weight * o(term.col, term.row);
    coh_minus_ += term.weight * o(term.row, term.col);
  }
}

Complex ExpectationProfile::value(double phi) const {
  const Complex fringe = std::polar(1.0, fringe_order_ * (phi + offset_));
  return base_ + coh_plus_ * fringe + coh_minus_ * std::conj(fringe);
}

double ExpectationProfile::real_value(double phi) const { return value(phi).real(); }

double ExpectationProfile::derivative(double phi) const {
  const Complex fringe = std::polar(1.0, fringe_order_ * (phi + offset_));
  const Complex i{0.0, 1.0};
  return (i * double(fringe_order_) * (coh_plus_ * fringe - coh_minus_ * std::conj(fringe)))
      .real();
}

SensitivityModel::SensitivityModel(const FringeForm& form, const DetectionScheme& scheme)
    : mean_profile_(form, scheme.op()),
      second_moment_profile_(form, scheme.op_squared()),
      fringe_order_(form.fringe_order()) {}

double SensitivityModel::mean(double phi) const { return mean_profile_.real_value(phi); }

double SensitivityModel::variance(double phi) const {
  const double mu = mean(phi);
  const double second = second_moment_profile_.real_value(phi);
  return std::max(second - mu * mu, 0.0);
}

double SensitivityModel::derivative(double phi) const { return mean_profile_.derivative(phi); }

double SensitivityModel::delta_phi(double phi) const {
  const double slope = std::abs(derivative(phi));
  const double spread = std::sqrt(variance(phi));
  // Spread and slope only vanish together (at exact fringe extrema), but in
  // floating point one can cancel to zero while the other retains rounding
  // noise; either way the point carries no first-order phase information, so
  // report it as insensitive instead of a spurious 0 or garbage ratio.
  if (slope == 0.0 || spread == 0.0) return std::numeric_limits<double>::infinity();
  return spread / slope;
}

std::vector<double> expectation_vs_phase(const LossyInterferometer& config,
                                         const FockOperator& op,
                                         const std::vector<double>& phi_grid) {
  const FringeForm form(config);
  const ExpectationProfile profile(form, op);
  std::vector<double> values;
  values.reserve(phi_grid.size());
  for (double phi : phi_grid) values.push_back(profile.real_value(phi));
  return values;
}

double fundamental_visibility(const LossyInterferometer& config) {
  return 2.0 * FringeForm(config).coherence_sum();
}

double detection_visibility(const LossyInterferometer& config, const FockOperator& op) {
  const FringeForm form(config);
  return expectation(op, form.density_matrix(0.0)).real();
}

double phase_sensitivity(const LossyInterferometer& config, const FockOperator& op, double phi) {
  const FringeForm form(config);
  const DetectionScheme scheme(op);
  return SensitivityModel(form, scheme).delta_phi(phi);
}

double expectation_derivative(const LossyInterferometer& config, const FockOperator& op,
                              double phi) {
  const FringeForm form(config);
  return ExpectationProfile(form, op).derivative(phi);
}

double expectation_derivative_fd(const LossyInterferometer& config, const FockOperator& op,
                                 double phi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("expectation_derivative_fd: step must be > 0");
  const FringeForm form(config);
  const double up = expectation(op, form.density_matrix(phi + step)).real();
  const double down = expectation(op, form.density_matrix(phi - step)).real();
  return (up - down) / (2.0 * step);
}

MinSensitivity min_phase_sensitivity(const SensitivityModel& model) {
  const double period = kPi / model.fringe_order();
  const double h = period / kScanPoints;
  double best_phi = std::numeric_limits<double>::quiet_NaN();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScanPoints; ++i) {
    const double phi = (i + 0.5) * h;  // interior midpoints; endpoints have zero slope
    const double value = model.delta_phi(phi);
    if (value < best) {
      best = value;
      best_phi = phi;
    }
  }
  if (!std::isfinite(best)) return {best_phi, best};
  // Keep refinement off the fringe edges: variance and slope both vanish
  // there, and the 0/0 noise can dip below flat interior minima.
  const double lo = std::max(best_phi - h, 0.5 * h);
  const double hi = std::min(best_phi + h, period - 0.5 * h);
  MinSensitivity refined =
      golden_minimize([&](double phi) { return model.delta_phi(phi); }, lo, hi);
  if (refined.delta_phi <= best) return refined;
  return {best_phi, best};
}

MinSensitivity min_phase_sensitivity(const LossyInterferometer& config, const FockOperator& op) {
  const FringeForm form(config);
  const DetectionScheme scheme(op);
  return min_phase_sensitivity(SensitivityModel(form, scheme));
}

std::optional<double> loss_threshold_to_snl(int m, int mprime, double delay_arm_loss) {
  check_pair(m, mprime, "loss_threshold_to_snl");
  if (!(delay_arm_loss >= 0.0 && delay_arm_loss <= 1.0)) {
    throw std::invalid_argument("loss_threshold_to_snl: delay_arm_loss must lie in [0, 1]");
  }
  const double snl = limits(m, mprime).shot_noise;
  const DetectionScheme scheme(detection_operator(m, mprime));
  const auto best_at = [&](double loss_b) {
    const LossyInterferometer config{m, mprime, ArmLoss::from_loss(delay_arm_loss),
                                     ArmLoss::from_loss(loss_b), 0.0};
    return min_phase_sensitivity(SensitivityModel(FringeForm(config), scheme)).delta_phi;
  };

  constexpr int kGridPoints = 101;
  std::vector<double> values(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) values[i] = best_at(i / double(kGridPoints - 1));
  for (int i = 0; i + 1 < kGridPoints; ++i) {
    if (values[i + 1] < values[i] - 1e-9 * std::max(1.0, std::abs(values[i]))) {
      throw std::runtime_error("loss_threshold_to_snl: sensitivity is not monotone in loss; "
                               "bisection would be unreliable");
    }
  }
  if (values.front() >= snl) return std::nullopt;

  int upper = kGridPoints - 1;  // values.back() = +inf > snl always (full loss kills the fringe)
  for (int i = 1; i < kGridPoints; ++i) {
    if (values[i] >= snl) {
      upper = i;
      break;
    }
  }
  double lo = (upper - 1) / double(kGridPoints - 1);
  double hi = upper / double(kGridPoints - 1);
  while (hi - lo > kLossTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (best_at(mid) < snl) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mmsense
