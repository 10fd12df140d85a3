#include "mmsense/fock.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mmsense/loss_channel.hpp"
#include "mmsense/metrology.hpp"
#include "test_helpers.hpp"

using namespace mmsense;

TEST_CASE("TwoModeBasis indexing round-trips") {
  const TwoModeBasis basis(5);
  CHECK(basis.dim() == 36);
  CHECK(basis.n_max() == 5);
  for (int i = 0; i < basis.dim(); ++i) {
    const BasisState s = basis.state(i);
    CHECK(basis.index(s) == i);
    CHECK(basis.contains(s));
  }
  CHECK(basis.index({0, 0}) == 0);
  CHECK(basis.index({1, 0}) == 6);
  CHECK_FALSE(basis.contains({6, 0}));
  CHECK_THROWS_AS(basis.index({6, 0}), std::out_of_range);
  CHECK_THROWS_AS(basis.index({0, -1}), std::out_of_range);
  CHECK_THROWS_AS(basis.state(36), std::out_of_range);
  CHECK_THROWS_AS(basis.state(-1), std::out_of_range);
  CHECK_THROWS_AS(TwoModeBasis(-1), std::invalid_argument);
}

TEST_CASE("make_mm_state builds the balanced superposition") {
  const PureState state = make_mm_state(2, 1);
  const double w = 1.0 / std::sqrt(2.0);
  CHECK(state.amplitude({2, 1}).real() == doctest::Approx(w).epsilon(1e-15));
  CHECK(state.amplitude({1, 2}).real() == doctest::Approx(w).epsilon(1e-15));
  CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-12));

  int nonzero = 0;
  for (int i = 0; i < state.basis().dim(); ++i) {
    if (std::abs(state.amplitudes()(i)) > 0.0) ++nonzero;
  }
  CHECK(nonzero == 2);

  for (auto [m, mp] : {std::pair{1, 0}, {5, 4}, {10, 0}, {20, 10}}) {
    CHECK(make_mm_state(m, mp).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("make_mm_state rejects invalid photon numbers") {
  CHECK_THROWS_AS(make_mm_state(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_mm_state(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_mm_state(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_mm_state(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(make_mm_state(5, 1, TwoModeBasis(4)), std::invalid_argument);
  CHECK_NOTHROW(make_mm_state(5, 1, TwoModeBasis(7)));
}

TEST_CASE("PureState validates shape and norm") {
  const TwoModeBasis basis(1);
  Vector bad = Vector::Zero(basis.dim());
  bad(0) = 0.5;
  CHECK_THROWS_AS(PureState(basis, bad), std::invalid_argument);
  CHECK_THROWS_AS(PureState(basis, Vector::Zero(3)), std::invalid_argument);
  const PureState unit = PureState::basis_state(basis, {1, 0});
  CHECK(unit.amplitude({1, 0}) == Complex{1.0, 0.0});
  CHECK(unit.amplitude({0, 1}) == Complex{0.0, 0.0});
}

TEST_CASE("dyad_sum places and accumulates weights") {
  const TwoModeBasis basis(2);
  const FockOperator single = dyad_sum(basis, {{{0, 2}, {2, 0}, Complex{1.0, 0.0}}});
  CHECK(single.entry({0, 2}, {2, 0}) == Complex{1.0, 0.0});
  CHECK(single.entry({2, 0}, {0, 2}) == Complex{0.0, 0.0});
  CHECK_FALSE(single.is_hermitian());

  const FockOperator paired = dyad_sum(basis, {{{0, 2}, {2, 0}, Complex{1.0, 0.0}},
                                               {{2, 0}, {0, 2}, Complex{1.0, 0.0}}});
  CHECK(paired.is_hermitian());

  const FockOperator doubled = dyad_sum(basis, {{{1, 1}, {1, 1}, Complex{0.75, 0.0}},
                                                {{1, 1}, {1, 1}, Complex{0.75, 0.0}}});
  CHECK(doubled.entry({1, 1}, {1, 1}).real() == doctest::Approx(1.5));

  CHECK(dyad_sum(basis, {}).matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(dyad_sum(basis, {{{3, 0}, {0, 0}, Complex{1.0, 0.0}}}), std::out_of_range);
}

TEST_CASE("FockOperator shape checks and squaring") {
  const TwoModeBasis basis(1);
  CHECK_THROWS_AS(FockOperator(basis, Matrix::Zero(3, 3)), std::invalid_argument);
  CHECK(FockOperator::identity(basis).is_hermitian());
  const FockOperator id2 = FockOperator::identity(basis).squared();
  CHECK((id2.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("DensityMatrix invariants are enforced at construction") {
  const TwoModeBasis basis(1);
  CHECK_THROWS_AS(DensityMatrix(basis, 2.0 * Matrix::Identity(4, 4)), std::invalid_argument);
  Matrix skew = Matrix::Zero(4, 4);
  skew(0, 0) = 1.0;
  skew(0, 1) = Complex{0.1, 0.0};  // no conjugate partner
  CHECK_THROWS_AS(DensityMatrix(basis, skew), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(basis, Matrix::Zero(2, 2)), std::invalid_argument);

  const DensityMatrix pure = PureState::basis_state(basis, {0, 1}).density_matrix();
  CHECK(pure.trace_error() <= 1e-15);
  CHECK(pure.hermiticity_error() <= 1e-15);
  CHECK(pure.min_eigenvalue() >= -1e-14);
  CHECK(pure.entry({0, 1}, {0, 1}).real() == doctest::Approx(1.0));
}

TEST_CASE("expectation is a trace inner product") {
  const TwoModeBasis basis(2);
  const DensityMatrix rho = make_mm_state(2, 1, basis).density_matrix();
  CHECK(expectation(FockOperator::identity(basis), rho).real() ==
        doctest::Approx(1.0).epsilon(1e-14));

  const FockOperator projector = dyad_sum(basis, {{{2, 1}, {2, 1}, Complex{1.0, 0.0}}});
  CHECK(expectation(projector, rho).real() == doctest::Approx(0.5).epsilon(1e-14));

  // Lossless M&M state at phi = 0 sits on the fringe maximum of A.
  const FockOperator a_op = detection_operator(2, 1);
  CHECK(expectation(a_op, rho).real() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(expectation(FockOperator::identity(TwoModeBasis(1)), rho),
                  std::invalid_argument);
}

TEST_CASE("expectation is linear in the operator and the state") {
  std::mt19937_64 rng(71);
  const LossyInterferometer c1 = testing::random_config(3, 1, rng);
  const LossyInterferometer c2 = testing::random_config(3, 1, rng);
  const DensityMatrix rho1 = reduced_density_matrix(c1);
  const DensityMatrix rho2 = reduced_density_matrix(c2);
  const TwoModeBasis basis = rho1.basis();

  const FockOperator a_op = detection_operator(3, 1, basis);
  const FockOperator id = FockOperator::identity(basis);
  const FockOperator combo(basis, 0.3 * a_op.matrix() + 0.7 * id.matrix());
  const Complex lhs = expectation(combo, rho1);
  const Complex rhs = 0.3 * expectation(a_op, rho1) + 0.7 * expectation(id, rho1);
  CHECK(std::abs(lhs - rhs) <= 1e-13);

  const DensityMatrix mix(basis, 0.4 * rho1.matrix() + 0.6 * rho2.matrix());
  const Complex mixed = expectation(a_op, mix);
  const Complex split = 0.4 * expectation(a_op, rho1) + 0.6 * expectation(a_op, rho2);
  CHECK(std::abs(mixed - split) <= 1e-13);
}
