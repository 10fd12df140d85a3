#include "mmsense/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmsense {

namespace {

std::string state_str(BasisState s) {
  return "|" + std::to_string(s.n_a) + "," + std::to_string(s.n_b) + ">";
}

}  // namespace

TwoModeBasis::TwoModeBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("TwoModeBasis: n_max must be >= 0, got " + std::to_string(n_max));
}

bool TwoModeBasis::contains(BasisState s) const {
  return s.n_a >= 0 && s.n_a <= n_max_ && s.n_b >= 0 && s.n_b <= n_max_;
}

int TwoModeBasis::index(BasisState s) const {
  if (!contains(s)) {
    throw std::out_of_range("TwoModeBasis: state " + state_str(s) + " outside n_max=" + std::to_string(n_max_));
  }
  return s.n_a * (n_max_ + 1) + s.n_b;
}

BasisState TwoModeBasis::state(int index) const {
  if (index < 0 || index >= dim()) {
    throw std::out_of_range("TwoModeBasis: index " + std::to_string(index) + " outside dim=" + std::to_string(dim()));
  }
  return BasisState{index / (n_max_ + 1), index % (n_max_ + 1)};
}

FockOperator::FockOperator(TwoModeBasis basis, Matrix entries)
    : basis_(basis), entries_(std::move(entries)) {
  if (entries_.rows() != basis_.dim() || entries_.cols() != basis_.dim()) {
    throw std::invalid_argument("FockOperator: matrix is " + std::to_string(entries_.rows()) + "x" +
                                std::to_string(entries_.cols()) + ", basis dim is " +
                                std::to_string(basis_.dim()));
  }
}

FockOperator FockOperator::zero(TwoModeBasis basis) {
  return FockOperator(basis, Matrix::Zero(basis.dim(), basis.dim()));
}

FockOperator FockOperator::identity(TwoModeBasis basis) {
  return FockOperator(basis, Matrix::Identity(basis.dim(), basis.dim()));
}

Complex FockOperator::entry(BasisState ket, BasisState bra) const {
  return entries_(basis_.index(ket), basis_.index(bra));
}

bool FockOperator::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

FockOperator FockOperator::squared() const {
  return FockOperator(basis_, entries_ * entries_);
}

DensityMatrix::DensityMatrix(TwoModeBasis basis, Matrix entries)
    : basis_(basis), entries_(std::move(entries)) {
  if (entries_.rows() != basis_.dim() || entries_.cols() != basis_.dim()) {
    throw std::invalid_argument("DensityMatrix: matrix is " + std::to_string(entries_.rows()) + "x" +
                                std::to_string(entries_.cols()) + ", basis dim is " +
                                std::to_string(basis_.dim()));
  }
  if (trace_error() > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " + std::to_string(trace_error()));
  }
  if (hermiticity_error() > 1e-12) {
    throw std::invalid_argument("DensityMatrix: not hermitian, max deviation " +
                                std::to_string(hermiticity_error()));
  }
}

Complex DensityMatrix::entry(BasisState row, BasisState col) const {
  return entries_(basis_.index(row), basis_.index(col));
}

double DensityMatrix::trace_error() const {
  return std::abs(entries_.trace() - Complex{1.0, 0.0});
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (entries_ + entries_.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

PureState::PureState(TwoModeBasis basis, Vector amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.dim()) {
    throw std::invalid_argument("PureState: amplitude vector has size " +
                                std::to_string(amplitudes_.size()) + ", basis dim is " +
                                std::to_string(basis_.dim()));
  }
  if (std::abs(norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("PureState: norm deviates from 1 by " + std::to_string(std::abs(norm() - 1.0)));
  }
}

PureState PureState::basis_state(TwoModeBasis basis, BasisState s) {
  Vector amp = Vector::Zero(basis.dim());
  amp(basis.index(s)) = 1.0;
  return PureState(basis, std::move(amp));
}

Complex PureState::amplitude(BasisState s) const { return amplitudes_(basis_.index(s)); }

double PureState::norm() const { return amplitudes_.norm(); }

DensityMatrix PureState::density_matrix() const {
  return DensityMatrix(basis_, amplitudes_ * amplitudes_.adjoint());
}

PureState make_mm_state(int m, int mprime) { return make_mm_state(m, mprime, TwoModeBasis(m)); }

PureState make_mm_state(int m, int mprime, TwoModeBasis basis) {
  if (mprime < 0 || m <= mprime) {
    throw std::invalid_argument("make_mm_state: requires m > m' >= 0, got m=" + std::to_string(m) +
                                " m'=" + std::to_string(mprime));
  }
  if (m > basis.n_max()) {
    throw std::invalid_argument("make_mm_state: m=" + std::to_string(m) + " exceeds basis n_max=" +
                                std::to_string(basis.n_max()));
  }
  Vector amp = Vector::Zero(basis.dim());
  const double w = 1.0 / std::sqrt(2.0);
  amp(basis.index({m, mprime})) = w;
  amp(basis.index({mprime, m})) = w;
  return PureState(basis, std::move(amp));
}

FockOperator dyad_sum(TwoModeBasis basis, const std::vector<DyadTerm>& terms) {
  Matrix entries = Matrix::Zero(basis.dim(), basis.dim());
  for (const DyadTerm& term : terms) {
    entries(basis.index(term.ket), basis.index(term.bra)) += term.weight;
  }
  return FockOperator(basis, std::move(entries));
}

Complex expectation(const FockOperator& op, const DensityMatrix& rho) {
  if (!(op.basis() == rho.basis())) {
    throw std::invalid_argument("expectation: operator and state bases differ");
  }
  // Tr[A B] = sum_{ij} A(i,j) B(j,i)
  return op.matrix().transpose().cwiseProduct(rho.matrix()).sum();
}

}  // namespace mmsense
