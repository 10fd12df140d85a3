#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace mmsense {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Photon occupation of the two interferometer arms.
struct BasisState {
  int n_a = 0;
  int n_b = 0;
  bool operator==(const BasisState&) const = default;
};

// Truncated two-mode Fock basis {|n_a, n_b> : 0 <= n_a, n_b <= n_max},
// flattened row-major: index = n_a * (n_max + 1) + n_b.
class TwoModeBasis {
 public:
  explicit TwoModeBasis(int n_max);

  int n_max() const { return n_max_; }
  int dim() const { return (n_max_ + 1) * (n_max_ + 1); }
  bool contains(BasisState s) const;
  int index(BasisState s) const;       // throws std::out_of_range outside the basis
  BasisState state(int index) const;   // inverse of index(); throws std::out_of_range
  bool operator==(const TwoModeBasis&) const = default;

 private:
  int n_max_;
};

// Hermitian-or-not operator on a TwoModeBasis; entries addressed as
// (ket index, bra index), i.e. matrix() (i, j) multiplies |i><j|.
class FockOperator {
 public:
  FockOperator(TwoModeBasis basis, Matrix entries);

  static FockOperator zero(TwoModeBasis basis);
  static FockOperator identity(TwoModeBasis basis);

  const TwoModeBasis& basis() const { return basis_; }
  const Matrix& matrix() const { return entries_; }
  Complex entry(BasisState ket, BasisState bra) const;
  bool is_hermitian(double tol = 1e-12) const;
  FockOperator squared() const;  // explicit matrix product, no spectral shortcut

 private:
  TwoModeBasis basis_;
  Matrix entries_;
};

// Validated density matrix: construction enforces unit trace (1e-10),
// hermiticity (1e-12). Positivity is queryable, not enforced.
class DensityMatrix {
 public:
  DensityMatrix(TwoModeBasis basis, Matrix entries);

  const TwoModeBasis& basis() const { return basis_; }
  const Matrix& matrix() const { return entries_; }
  Complex entry(BasisState row, BasisState col) const;
  double trace_error() const;        // |Tr(rho) - 1|
  double hermiticity_error() const;  // max |rho - rho^dagger|
  double min_eigenvalue() const;     // smallest eigenvalue of (rho + rho^dagger)/2

 private:
  TwoModeBasis basis_;
  Matrix entries_;
};

// Normalized pure state over a TwoModeBasis (norm enforced to 1e-12).
class PureState {
 public:
  PureState(TwoModeBasis basis, Vector amplitudes);

  static PureState basis_state(TwoModeBasis basis, BasisState s);

  const TwoModeBasis& basis() const { return basis_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(BasisState s) const;
  double norm() const;
  DensityMatrix density_matrix() const;  // |psi><psi|

 private:
  TwoModeBasis basis_;
  Vector amplitudes_;
};

struct DyadTerm {
  BasisState ket;
  BasisState bra;
  Complex weight{1.0, 0.0};
};

// (|m,m'> + |m',m>)/sqrt(2); requires m > m' >= 0. The one-argument basis
// defaults to n_max = m. Throws std::invalid_argument on bad (m, m') or a
// basis too small to hold the state.
PureState make_mm_state(int m, int mprime);
PureState make_mm_state(int m, int mprime, TwoModeBasis basis);

// Sum of weighted dyads w |ket><bra|; duplicate (ket, bra) cells accumulate.
FockOperator dyad_sum(TwoModeBasis basis, const std::vector<DyadTerm>& terms);

// Tr[op * rho]; bases must match (std::invalid_argument otherwise).
Complex expectation(const FockOperator& op, const DensityMatrix& rho);

}  // namespace mmsense
