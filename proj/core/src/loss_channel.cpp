#include "mmsense/loss_channel.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "mmsense/combinatorics.hpp"

namespace mmsense {

namespace {

constexpr int kMaxClosedFormPhotons = 30;

// base^expo with the 0^0 = 1 convention needed at T = 0 or R = 0 edges.
double power_term(double base, int expo) {
  if (expo == 0) return 1.0;
  return std::pow(base, expo);
}

// base^(twice_expo / 2), exact 1.0 at twice_expo = 0.
double half_power_term(double base, int twice_expo) {
  if (twice_expo == 0) return 1.0;
  if (twice_expo % 2 == 0) return power_term(base, twice_expo / 2);
  return std::pow(base, 0.5 * twice_expo);
}

void check_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

ArmLoss ArmLoss::from_loss(double loss, double transmission_phase, double reflection_phase) {
  ArmLoss arm{1.0 - loss, transmission_phase, reflection_phase};
  arm.validate();
  return arm;
}

Complex ArmLoss::t() const {
  return std::sqrt(transmittance) * std::polar(1.0, transmission_phase);
}

Complex ArmLoss::r() const {
  return std::sqrt(reflectance()) * std::polar(1.0, reflection_phase);
}

void ArmLoss::validate() const {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("ArmLoss: transmittance must lie in [0, 1], got " +
                                std::to_string(transmittance));
  }
  check_finite(transmission_phase, "ArmLoss: transmission_phase");
  check_finite(reflection_phase, "ArmLoss: reflection_phase");
}

void LossyInterferometer::validate() const {
  if (mprime < 0 || m <= mprime) {
    throw std::invalid_argument("LossyInterferometer: requires m > m' >= 0, got m=" +
                                std::to_string(m) + " m'=" + std::to_string(mprime));
  }
  if (m > kMaxClosedFormPhotons) {
    throw std::invalid_argument("LossyInterferometer: m=" + std::to_string(m) +
                                " exceeds the supported maximum of " +
                                std::to_string(kMaxClosedFormPhotons));
  }
  arm_a.validate();
  arm_b.validate();
  check_finite(phase, "LossyInterferometer: phase");
}

LossCoefficients coefficients(const LossyInterferometer& config, int k, int l, int lprime) {
  config.validate();
  const int m = config.m;
  const int mp = config.mprime;
  if (k < 0 || k > m || l < 0 || l > mp || lprime < 0 || lprime > mp) {
    throw std::out_of_range("coefficients: need 0 <= k <= m, 0 <= l, l' <= m', got k=" +
                            std::to_string(k) + " l=" + std::to_string(l) +
                            " l'=" + std::to_string(lprime));
  }
  const double ta = config.arm_a.transmittance;
  const double ra = config.arm_a.reflectance();
  const double tb = config.arm_b.transmittance;
  const double rb = config.arm_b.reflectance();

  LossCoefficients out;
  const double g_kl = gamma_coefficient(m, mp, k, l);
  out.a_sq = g_kl * g_kl * power_term(ta, m - k) * power_term(ra, k) *
             power_term(tb, mp - l) * power_term(rb, l);
  out.b_sq = g_kl * g_kl * power_term(ta, mp - l) * power_term(ra, l) *
             power_term(tb, m - k) * power_term(rb, k);

  const double magnitude = gamma_coefficient(m, mp, l, lprime) *
                           gamma_coefficient(m, mp, lprime, l) *
                           half_power_term(ta, m + mp - 2 * l) * power_term(ra, l) *
                           half_power_term(tb, m + mp - 2 * lprime) * power_term(rb, lprime);
  const double theta = (m - mp) * (config.phase + config.arm_b.transmission_phase -
                                   config.arm_a.transmission_phase);
  out.cross = magnitude * std::polar(1.0, -theta);
  return out;
}

FringeForm::FringeForm(const LossyInterferometer& config)
    : basis_(config.m >= 1 ? config.m : 1),
      fringe_order_(0),
      phase_offset_(0.0),
      coherence_sum_(0.0) {
  config.validate();
  basis_ = config.basis();
  fringe_order_ = config.fringe_order();
  phase_offset_ = config.arm_b.transmission_phase - config.arm_a.transmission_phase;

  const int m = config.m;
  const int mp = config.mprime;
  const double ta = config.arm_a.transmittance;
  const double ra = config.arm_a.reflectance();
  const double tb = config.arm_b.transmittance;
  const double rb = config.arm_b.reflectance();

  std::map<int, double> diagonal;
  for (int k = 0; k <= m; ++k) {
    for (int l = 0; l <= mp; ++l) {
      const double g = gamma_coefficient(m, mp, k, l);
      const double g_sq = g * g;
      const double a_sq = g_sq * power_term(ta, m - k) * power_term(ra, k) *
                          power_term(tb, mp - l) * power_term(rb, l);
      const double b_sq = g_sq * power_term(ta, mp - l) * power_term(ra, l) *
                          power_term(tb, m - k) * power_term(rb, k);
      diagonal[basis_.index({m - k, mp - l})] += a_sq;
      diagonal[basis_.index({mp - l, m - k})] += b_sq;
    }
  }
  diagonal_.reserve(diagonal.size());
  for (const auto& [index, weight] : diagonal) diagonal_.push_back({index, weight});

  std::map<std::pair<int, int>, double> coherence;
  for (int l = 0; l <= mp; ++l) {
    for (int lp = 0; lp <= mp; ++lp) {
      const double weight = gamma_coefficient(m, mp, l, lp) * gamma_coefficient(m, mp, lp, l) *
                            half_power_term(ta, m + mp - 2 * l) * power_term(ra, l) *
                            half_power_term(tb, m + mp - 2 * lp) * power_term(rb, lp);
      const int row = basis_.index({mp - l, m - lp});
      const int col = basis_.index({m - l, mp - lp});
      coherence[{row, col}] += weight;
    }
  }
  coherence_.reserve(coherence.size());
  for (const auto& [cell, weight] : coherence) {
    coherence_.push_back({cell.first, cell.second, weight});
    coherence_sum_ += weight;
  }
}

DensityMatrix FringeForm::density_matrix(double phi) const {
  Matrix entries = Matrix::Zero(basis_.dim(), basis_.dim());
  for (const DiagonalTerm& term : diagonal_) entries(term.index, term.index) = term.weight;
  const Complex fringe = std::polar(1.0, fringe_order_ * (phi + phase_offset_));
  for (const CoherenceTerm& term : coherence_) {
    entries(term.row, term.col) += term.weight * fringe;
    entries(term.col, term.row) += term.weight * std::conj(fringe);
  }
  return DensityMatrix(basis_, std::move(entries));
}

DensityMatrix reduced_density_matrix(const LossyInterferometer& config) {
  FringeForm form(config);
  return form.density_matrix(config.phase);
}

DensityMatrix noon_density_matrix(int n, ArmLoss arm_a, ArmLoss arm_b, double phi) {
  if (n < 1) throw std::invalid_argument("noon_density_matrix: requires N >= 1, got " + std::to_string(n));
  return reduced_density_matrix(LossyInterferometer{n, 0, arm_a, arm_b, phi});
}

}  // namespace mmsense
