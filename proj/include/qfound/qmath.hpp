// Copyright 2026 The qfound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qfound/rng.hpp"

namespace qfound {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Absolute tolerance for matrix-element comparisons.
inline constexpr double kTolEq = 1e-10;
/// Eigenvalues above -kTolPsd count as nonnegative.
inline constexpr double kTolPsd = 1e-9;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);
Vec3 scaled(const Vec3& a, double s);

/**
 * Dense complex matrix stored row-major.
 *
 * Everything in this library is at most 8x8, so operations are plain loops
 * and values are copied freely.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// Largest |M_ij - N_ij|; throws DimensionError on shape mismatch.
  double max_abs_diff(const ComplexMatrix& other) const;
  bool approx_equal(const ComplexMatrix& other, double tol = kTolEq) const;
  bool is_hermitian(double tol = kTolEq) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Unit-norm state vector.
class StateVector {
 public:
  /// Throws InputError unless the squared norm is 1 within kTolEq.
  explicit StateVector(std::vector<Complex> amplitudes);

  /// Normalizes the given amplitudes; throws InputError on a zero vector.
  static StateVector normalize(std::vector<Complex> amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }

 private:
  std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first slot.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
Complex inner(const StateVector& a, const StateVector& b);
double squared_norm(std::span<const Complex> v);

/// Hermitian matrix.
class Observable {
 public:
  /// Throws InputError unless square and Hermitian within kTolEq.
  explicit Observable(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Hermitian, positive-semidefinite, unit-trace matrix.
class DensityOperator {
 public:
  /// Throws InputError when any invariant fails.
  explicit DensityOperator(ComplexMatrix m);

  static DensityOperator pure(const StateVector& psi);
  /// sum_k weights[k] |states[k]><states[k]|; weights must be >= 0 and sum to 1.
  static DensityOperator mixture(std::span<const double> weights,
                                 std::span<const StateVector> states);
  static DensityOperator maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);
std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v);

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
/// n.sigma for a real 3-vector n (not necessarily unit).
ComplexMatrix spin_along(const Vec3& n);

/// alpha*I + beta.sigma; eigenvalues alpha +- |beta|.
Observable pauli_obs(double alpha, const Vec3& beta);

/// Both eigenvalues of a 2x2 Hermitian operator, descending, in closed form.
std::pair<double, double> eig_herm2(const Observable& h);

struct EigenSystem {
  std::vector<double> values;        ///< descending
  std::vector<StateVector> vectors;  ///< vectors[k] belongs to values[k]
};

/// Full eigendecomposition by cyclic complex Jacobi sweeps.
EigenSystem eigh(const ComplexMatrix& hermitian);
/// Eigenvalues only, descending. Closed form for 2x2, Jacobi otherwise.
std::vector<double> eigvalsh(const ComplexMatrix& hermitian);

/// Tr(rho A). Throws DimensionError on mismatch, VerificationError if the
/// imaginary part exceeds kTolEq.
double expectation(const DensityOperator& rho, const Observable& a);
/// <psi|A|psi>.
double expectation(const StateVector& psi, const Observable& a);

Observable projector(const StateVector& psi);
bool is_projector(const ComplexMatrix& p, double tol = kTolEq);
/// Number of eigenvalues above kTolPsd in absolute value.
int numerical_rank(const ComplexMatrix& hermitian);

struct Intersection {
  Observable projector;
  int rank;
};

/// Projector onto range(P) n range(Q): the eigenvalue-0 eigenspace of
/// 2I - P - Q. Throws InputError if either argument is not a projector.
Intersection intersection_projector(const Observable& p, const Observable& q);

/// Haar-random pure state (normalized complex Gaussian amplitudes).
StateVector random_state(std::size_t dim, Rng& rng);
/// Mixture of `dim` random pure states with uniform-simplex weights.
DensityOperator random_density(std::size_t dim, Rng& rng);
/// Uniform point on the unit sphere.
Vec3 random_unit_vec3(Rng& rng);
double standard_normal(Rng& rng);

}  // namespace qfound
