#pragma once

#include "mmsense/fock.hpp"
#include "mmsense/loss_channel.hpp"

namespace mmsense::oracle {

// Largest m accepted by the brute-force path; dimension grows as (m+1)^4.
inline constexpr int kMaxPhotons = 8;

enum class Mode { signal_a, signal_b, env_a, env_b };

struct Occupation {
  int n_a = 0;
  int n_b = 0;
  int n_va = 0;
  int n_vb = 0;
  bool operator==(const Occupation&) const = default;
};

// Pure state of the two arms plus one environment mode per arm, each mode
// truncated at n_max. Flat index nests row-major in the order
// (n_a, n_b, n_va, n_vb). Construction enforces unit norm (1e-12).
class FourModeState {
 public:
  FourModeState(int n_max, Vector amplitudes);

  static FourModeState basis_state(int n_max, Occupation occ);
  // Signal state in arms a, b; both environments in vacuum.
  static FourModeState embed(const PureState& signal);

  int n_max() const { return n_max_; }
  int dim() const;  // (n_max + 1)^4
  int index(Occupation occ) const;       // throws std::out_of_range
  Occupation occupation(int index) const;
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(Occupation occ) const;
  double norm() const;
  // True when every amplitude above `tol` sits on the total-photon-number shell.
  bool supported_on_total(int total, double tol = 1e-15) const;

 private:
  int n_max_;
  Vector amplitudes_;
};

// e^{i phi n_mode}: multiplies each amplitude by exp(i * occupation * phi).
FourModeState apply_phase(const FourModeState& state, Mode mode, double phi);

// Two-mode beam splitter coupling `signal` and `environment`:
//   a^dag -> t a^dag - r a_v^dag,   a_v^dag -> r* a^dag + t* a_v^dag,
// requiring |t|^2 + |r|^2 = 1 (1e-12). Throws std::invalid_argument on a
// non-unitary pair or equal modes, std::out_of_range if photons would spill
// past the truncation.
FourModeState apply_beam_splitter(const FourModeState& state, Mode signal, Mode environment,
                                  Complex t, Complex r);

// Partial trace over both environment modes; the result is exactly hermitian
// by construction and keeps trace = |state|^2.
DensityMatrix trace_out_environment(const FourModeState& state);

// Full brute-force pipeline: embed (|m,m'>+|m',m>)/sqrt(2), apply the phase on
// arm b and the two loss beam splitters, trace out the environments. Computes
// both operation orders (phase first / phase last) and refuses to return if
// they disagree beyond 1e-12. Guarded to m <= kMaxPhotons.
DensityMatrix reduced_density_matrix(const LossyInterferometer& config);

}  // namespace mmsense::oracle
