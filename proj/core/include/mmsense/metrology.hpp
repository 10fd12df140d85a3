#pragma once

#include <optional>
#include <vector>

#include "mmsense/fock.hpp"
#include "mmsense/loss_channel.hpp"

namespace mmsense {

// Benchmark sensitivities for an (m, m') probe: Heisenberg limit 1/(m+m'),
// shot-noise limit 1/sqrt(m+m'), and the lossless optimum 1/(m-m').
struct MetrologyLimits {
  double heisenberg = 0.0;
  double shot_noise = 0.0;
  double lossless_best = 0.0;
};

MetrologyLimits limits(int m, int mprime);

// Dyads of the detection observable
//   A = sum_{r,s=0}^{m'} |m'-r, m-s><m-r, m'-s| + h.c.
// All 2 (m'+1)^2 terms have unit weight; for m > m' every cell is distinct.
std::vector<DyadTerm> detection_dyads(int m, int mprime);
FockOperator detection_operator(int m, int mprime);  // basis n_max = m
FockOperator detection_operator(int m, int mprime, TwoModeBasis basis);

// Detection observable together with its explicit square, computed once and
// reused across phase points and loss configurations.
class DetectionScheme {
 public:
  explicit DetectionScheme(FockOperator op);

  const FockOperator& op() const { return op_; }
  const FockOperator& op_squared() const { return op_squared_; }

 private:
  FockOperator op_;
  FockOperator op_squared_;
};

// Tr[op rho(phi)] reduced to base + c+ e^{+i Theta} + c- e^{-i Theta} with
// Theta = fringe_order * (phi + offset); exact, O(1) per phase point.
class ExpectationProfile {
 public:
  ExpectationProfile(const FringeForm& form, const FockOperator& op);

  Complex value(double phi) const;
  double real_value(double phi) const;
  double derivative(double phi) const;  // d/dphi of real_value, analytic

 private:
  int fringe_order_;
  double offset_;
  Complex base_;
  Complex coh_plus_;
  Complex coh_minus_;
};

// Error-propagation sensitivity delta_phi(phi) = Delta_O / |d<O>/dphi| for a
// fixed loss configuration and detection scheme.
class SensitivityModel {
 public:
  SensitivityModel(const FringeForm& form, const DetectionScheme& scheme);

  double mean(double phi) const;
  double variance(double phi) const;   // clamped at 0 against rounding
  double derivative(double phi) const;
  // +inf where the slope or the spread vanishes (fringe extrema carry no
  // first-order phase information).
  double delta_phi(double phi) const;
  int fringe_order() const { return fringe_order_; }

 private:
  ExpectationProfile mean_profile_;
  ExpectationProfile second_moment_profile_;
  int fringe_order_;
};

// <op>(phi) over a grid of phase values.
std::vector<double> expectation_vs_phase(const LossyInterferometer& config,
                                         const FockOperator& op,
                                         const std::vector<double>& phi_grid);

// Fringe visibility of the state itself: V_f = 2 sum of coherence weights;
// equals the amplitude of <A>(phi) = V_f cos(Theta).
double fundamental_visibility(const LossyInterferometer& config);

// Visibility seen through an arbitrary observable: Tr[op rho(phi = 0)].
// Never exceeds V_f for the detection operator family.
double detection_visibility(const LossyInterferometer& config, const FockOperator& op);

double phase_sensitivity(const LossyInterferometer& config, const FockOperator& op, double phi);

// Analytic d<op>/dphi and an independent central-difference check that goes
// through full density-matrix assembly at phi +/- step.
double expectation_derivative(const LossyInterferometer& config, const FockOperator& op,
                              double phi);
double expectation_derivative_fd(const LossyInterferometer& config, const FockOperator& op,
                                 double phi, double step = 1e-6);

struct MinSensitivity {
  double phi = 0.0;
  double delta_phi = 0.0;
};

// Global minimum of delta_phi over one fringe period (0, pi/fringe_order):
// 512-point interior scan plus golden-section refinement to 1e-8 in phi.
// Returns {NaN, +inf} when the fringe is fully dephased.
MinSensitivity min_phase_sensitivity(const SensitivityModel& model);
MinSensitivity min_phase_sensitivity(const LossyInterferometer& config, const FockOperator& op);

// Smallest long-arm loss L_b at which the probe's best sensitivity (with the
// matched detection operator) stops beating the shot-noise limit, holding the
// delay-arm loss fixed. Bisection to 1e-4; std::nullopt when the probe never
// beats shot noise even at L_b = 0.
std::optional<double> loss_threshold_to_snl(int m, int mprime, double delay_arm_loss);

}  // namespace mmsense
