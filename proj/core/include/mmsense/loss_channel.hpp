#pragma once

#include <vector>

#include "mmsense/fock.hpp"

namespace mmsense {

// Fictitious-beam-splitter loss on one arm: transmittance T with transmission
// phase phi_u and reflection phase psi_u, so t = sqrt(T) e^{i phi_u},
// r = sqrt(1-T) e^{i psi_u}.
struct ArmLoss {
  double transmittance = 1.0;
  double transmission_phase = 0.0;
  double reflection_phase = 0.0;

  static ArmLoss from_loss(double loss, double transmission_phase = 0.0,
                           double reflection_phase = 0.0);

  double reflectance() const { return 1.0 - transmittance; }
  Complex t() const;
  Complex r() const;
  void validate() const;  // std::invalid_argument outside [0, 1] or non-finite phases
};

// Two-arm interferometer fed with (|m,m'> + |m',m>)/sqrt(2), loss on both
// arms, unknown phase `phase` accumulated on arm b.
struct LossyInterferometer {
  int m = 1;
  int mprime = 0;
  ArmLoss arm_a;
  ArmLoss arm_b;
  double phase = 0.0;

  void validate() const;  // m > m' >= 0, m <= 30, valid arms, finite phase
  int fringe_order() const { return m - mprime; }
  TwoModeBasis basis() const { return TwoModeBasis(m); }
};

// Closed-form weights for one (k, l, l') term of the reduced state:
//   a_sq  — population of |m-k, m'-l>  (k, l photons lost from arms a, b)
//   b_sq  — population of |m'-l, m-k>  (mirror branch)
//   cross — coherence amplitude gamma_{l,l'} gamma_{l',l}
//           T_a^{(m+m'-2l)/2} R_a^l T_b^{(m+m'-2l')/2} R_b^{l'}
//           e^{-i (m-m')(phase + phi_b - phi_a)}; its conjugate multiplies the
//           dyad |m'-l, m-l'><m-l, m'-l'|.
struct LossCoefficients {
  double a_sq = 0.0;
  double b_sq = 0.0;
  Complex cross{0.0, 0.0};
};

LossCoefficients coefficients(const LossyInterferometer& config, int k, int l, int lprime);

struct DiagonalTerm {
  int index = 0;      // flat basis index
  double weight = 0;  // population, phase-independent
};

// One coherence cell: weight e^{+i Theta} on (row, col) and its conjugate on
// (col, row), with Theta = fringe_order * (phi + phase_offset).
struct CoherenceTerm {
  int row = 0;
  int col = 0;
  double weight = 0;
};

// Phase-resolved decomposition rho(phi) = D + e^{+i Theta} K + e^{-i Theta} K^T.
// D and K are fixed once per loss configuration, so states (and traces against
// fixed operators) are O(terms) per phase point.
class FringeForm {
 public:
  explicit FringeForm(const LossyInterferometer& config);

  const TwoModeBasis& basis() const { return basis_; }
  int fringe_order() const { return fringe_order_; }
  double phase_offset() const { return phase_offset_; }  // phi_b - phi_a
  const std::vector<DiagonalTerm>& diagonal_terms() const { return diagonal_; }
  const std::vector<CoherenceTerm>& coherence_terms() const { return coherence_; }
  double coherence_sum() const { return coherence_sum_; }  // sum of K entries = V_f / 2

  DensityMatrix density_matrix(double phi) const;

 private:
  TwoModeBasis basis_;
  int fringe_order_;
  double phase_offset_;
  std::vector<DiagonalTerm> diagonal_;
  std::vector<CoherenceTerm> coherence_;
  double coherence_sum_;
};

// Reduced state of the two arms at config.phase, assembled from the closed form.
DensityMatrix reduced_density_matrix(const LossyInterferometer& config);

// N00N special case |N::0>; requires N >= 1.
DensityMatrix noon_density_matrix(int n, ArmLoss arm_a, ArmLoss arm_b, double phi);

}  // namespace mmsense
