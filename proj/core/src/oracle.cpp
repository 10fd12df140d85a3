#include "mmsense/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mmsense/combinatorics.hpp"

namespace mmsense::oracle {

namespace {

Complex ipow(Complex base, int expo) {
  Complex result{1.0, 0.0};
  for (int i = 0; i < expo; ++i) result *= base;
  return result;
}

int& component(Occupation& occ, Mode mode) {
  switch (mode) {
    case Mode::signal_a: return occ.n_a;
    case Mode::signal_b: return occ.n_b;
    case Mode::env_a: return occ.n_va;
    case Mode::env_b: return occ.n_vb;
  }
  throw std::invalid_argument("unknown Mode");
}

int component(const Occupation& occ, Mode mode) {
  Occupation copy = occ;
  return component(copy, mode);
}

}  // namespace

FourModeState::FourModeState(int n_max, Vector amplitudes)
    : n_max_(n_max), amplitudes_(std::move(amplitudes)) {
  if (n_max < 0) throw std::invalid_argument("FourModeState: n_max must be >= 0");
  if (amplitudes_.size() != dim()) {
    throw std::invalid_argument("FourModeState: amplitude vector has size " +
                                std::to_string(amplitudes_.size()) + ", expected " +
                                std::to_string(dim()));
  }
  if (std::abs(norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("FourModeState: norm deviates from 1 by " +
                                std::to_string(std::abs(norm() - 1.0)));
  }
}

FourModeState FourModeState::basis_state(int n_max, Occupation occ) {
  const int side = n_max + 1;
  const auto in_range = [&](int n) { return n >= 0 && n <= n_max; };
  if (!in_range(occ.n_a) || !in_range(occ.n_b) || !in_range(occ.n_va) || !in_range(occ.n_vb)) {
    throw std::out_of_range("FourModeState: occupation outside n_max=" + std::to_string(n_max));
  }
  Vector amp = Vector::Zero(side * side * side * side);
  amp(((occ.n_a * side + occ.n_b) * side + occ.n_va) * side + occ.n_vb) = 1.0;
  return FourModeState(n_max, std::move(amp));
}

FourModeState FourModeState::embed(const PureState& signal) {
  const int n_max = signal.basis().n_max();
  const int side = n_max + 1;
  Vector amp = Vector::Zero(side * side * side * side);
  for (int i = 0; i < signal.basis().dim(); ++i) {
    const Complex c = signal.amplitudes()(i);
    if (c == Complex{0.0, 0.0}) continue;
    const BasisState s = signal.basis().state(i);
    amp(((s.n_a * side + s.n_b) * side + 0) * side + 0) = c;
  }
  return FourModeState(n_max, std::move(amp));
}

int FourModeState::dim() const {
  const int side = n_max_ + 1;
  return side * side * side * side;
}

int FourModeState::index(Occupation occ) const {
  const auto in_range = [&](int n) { return n >= 0 && n <= n_max_; };
  if (!in_range(occ.n_a) || !in_range(occ.n_b) || !in_range(occ.n_va) || !in_range(occ.n_vb)) {
    throw std::out_of_range("FourModeState: occupation outside n_max=" + std::to_string(n_max_));
  }
  const int side = n_max_ + 1;
  return ((occ.n_a * side + occ.n_b) * side + occ.n_va) * side + occ.n_vb;
}

Occupation FourModeState::occupation(int index) const {
  if (index < 0 || index >= dim()) {
    throw std::out_of_range("FourModeState: index " + std::to_string(index) + " outside dim=" +
                            std::to_string(dim()));
  }
  const int side = n_max_ + 1;
  Occupation occ;
  occ.n_vb = index % side;
  index /= side;
  occ.n_va = index % side;
  index /= side;
  occ.n_b = index % side;
  occ.n_a = index / side;
  return occ;
}

Complex FourModeState::amplitude(Occupation occ) const { return amplitudes_(index(occ)); }

double FourModeState::norm() const { return amplitudes_.norm(); }

bool FourModeState::supported_on_total(int total, double tol) const {
  for (int i = 0; i < dim(); ++i) {
    if (std::abs(amplitudes_(i)) <= tol) continue;
    const Occupation occ = occupation(i);
    if (occ.n_a + occ.n_b + occ.n_va + occ.n_vb != total) return false;
  }
  return true;
}

FourModeState apply_phase(const FourModeState& state, Mode mode, double phi) {
  Vector out = state.amplitudes();
  for (int i = 0; i < state.dim(); ++i) {
    if (out(i) == Complex{0.0, 0.0}) continue;
    out(i) *= std::polar(1.0, component(state.occupation(i), mode) * phi);
  }
  return FourModeState(state.n_max(), std::move(out));
}

FourModeState apply_beam_splitter(const FourModeState& state, Mode signal, Mode environment,
                                  Complex t, Complex r) {
  if (signal == environment) {
    throw std::invalid_argument("apply_beam_splitter: signal and environment must differ");
  }
  if (std::abs(std::norm(t) + std::norm(r) - 1.0) > 1e-12) {
    throw std::invalid_argument("apply_beam_splitter: |t|^2 + |r|^2 must equal 1");
  }
  const int n_max = state.n_max();
  Vector out = Vector::Zero(state.dim());
  for (int idx = 0; idx < state.dim(); ++idx) {
    const Complex c = state.amplitudes()(idx);
    if (c == Complex{0.0, 0.0}) continue;
    const Occupation occ = state.occupation(idx);
    const int ns = component(occ, signal);
    const int ne = component(occ, environment);
    // (t a^dag - r av^dag)^ns (r* a^dag + t* av^dag)^ne |0,0> expanded binomially.
    for (int j = 0; j <= ns; ++j) {
      for (int i = 0; i <= ne; ++i) {
        const int ns_out = ns - j + i;
        const int ne_out = j + ne - i;
        if (ns_out > n_max || ne_out > n_max) {
          throw std::out_of_range("apply_beam_splitter: truncation n_max=" + std::to_string(n_max) +
                                  " exceeded; enlarge the basis");
        }
        const Complex coef = binomial(ns, j) * binomial(ne, i) * ipow(t, ns - j) *
                             ipow(-r, j) * ipow(std::conj(r), i) * ipow(std::conj(t), ne - i) *
                             std::exp(0.5 * (log_factorial(ns_out) + log_factorial(ne_out) -
                                             log_factorial(ns) - log_factorial(ne)));
        Occupation occ_out = occ;
        component(occ_out, signal) = ns_out;
        component(occ_out, environment) = ne_out;
        out(state.index(occ_out)) += c * coef;
      }
    }
  }
  return FourModeState(n_max, std::move(out));
}

DensityMatrix trace_out_environment(const FourModeState& state) {
  const int n_max = state.n_max();
  const int side = n_max + 1;
  const TwoModeBasis basis(n_max);
  Matrix rho = Matrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const BasisState si = basis.state(i);
    for (int j = 0; j <= i; ++j) {
      const BasisState sj = basis.state(j);
      Complex acc{0.0, 0.0};
      for (int va = 0; va < side; ++va) {
        for (int vb = 0; vb < side; ++vb) {
          acc += state.amplitude({si.n_a, si.n_b, va, vb}) *
                 std::conj(state.amplitude({sj.n_a, sj.n_b, va, vb}));
        }
      }
      rho(i, j) = acc;
      rho(j, i) = std::conj(acc);
    }
  }
  return DensityMatrix(basis, std::move(rho));
}

DensityMatrix reduced_density_matrix(const LossyInterferometer& config) {
  config.validate();
  if (config.m > kMaxPhotons) {
    throw std::invalid_argument("oracle::reduced_density_matrix: m=" + std::to_string(config.m) +
                                " exceeds brute-force limit " + std::to_string(kMaxPhotons));
  }
  const FourModeState input = FourModeState::embed(make_mm_state(config.m, config.mprime));
  const Complex ta = config.arm_a.t();
  const Complex ra = config.arm_a.r();
  const Complex tb = config.arm_b.t();
  const Complex rb = config.arm_b.r();

  FourModeState phase_first = apply_phase(input, Mode::signal_b, config.phase);
  phase_first = apply_beam_splitter(phase_first, Mode::signal_a, Mode::env_a, ta, ra);
  phase_first = apply_beam_splitter(phase_first, Mode::signal_b, Mode::env_b, tb, rb);
  const DensityMatrix rho_first = trace_out_environment(phase_first);

  FourModeState phase_last = apply_beam_splitter(input, Mode::signal_a, Mode::env_a, ta, ra);
  phase_last = apply_beam_splitter(phase_last, Mode::signal_b, Mode::env_b, tb, rb);
  phase_last = apply_phase(phase_last, Mode::signal_b, config.phase);
  const DensityMatrix rho_last = trace_out_environment(phase_last);

  const double mismatch = (rho_first.matrix() - rho_last.matrix()).cwiseAbs().maxCoeff();
  if (mismatch > 1e-12) {
    throw std::logic_error("oracle::reduced_density_matrix: phase placement changed the reduced "
                           "state by " + std::to_string(mismatch));
  }
  return rho_first;
}

}  // namespace mmsense::oracle
