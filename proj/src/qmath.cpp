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

#include "qfound/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfound/error.hpp"

namespace qfound {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n == 0.0) throw InputError("cannot normalize the zero vector");
  return {a[0] / n, a[1] / n, a[2] / n};
}

Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw DimensionError("entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("shape mismatch in comparison");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && max_abs_diff(other) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("shape mismatch in matrix product");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

// ---------------------------------------------------------------------------
// States and operators

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner product of vectors of different length");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Complex inner(const StateVector& a, const StateVector& b) {
  return inner(a.amplitudes(), b.amplitudes());
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DimensionError("state vector must have positive dimension");
  if (std::abs(squared_norm(amps_) - 1.0) > kTolEq)
    throw InputError("state vector is not normalized");
}

StateVector StateVector::normalize(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (n == 0.0) throw InputError("cannot normalize the zero vector");
  for (auto& x : amplitudes) x /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InputError("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

Observable::Observable(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("observable must be square");
  if (!m_.is_hermitian()) throw InputError("observable is not Hermitian");
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("density operator must be square");
  if (!m_.is_hermitian()) throw InputError("density operator is not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTolEq) throw InputError("density operator trace is not 1");
  const auto values = eigvalsh(m_);
  if (values.back() < -kTolPsd)
    throw InputError("density operator has a negative eigenvalue");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(projector(psi).matrix());
}

DensityOperator DensityOperator::mixture(std::span<const double> weights,
                                         std::span<const StateVector> states) {
  if (weights.size() != states.size() || states.empty())
    throw InputError("mixture needs one weight per state");
  const std::size_t d = states.front().dim();
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (weights[k] < 0.0) throw InputError("mixture weight is negative");
    if (states[k].dim() != d) throw DimensionError("mixture of states of different dimension");
    m += projector(states[k]).matrix() * Complex(weights[k]);
  }
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  if (factors.size() == 0) throw DimensionError("kron of an empty list");
  auto it = factors.begin();
  ComplexMatrix out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw DimensionError("operator and vector dimensions differ");
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix spin_along(const Vec3& n) {
  return {{n[2], Complex(n[0], -n[1])}, {Complex(n[0], n[1]), -n[2]}};
}

Observable pauli_obs(double alpha, const Vec3& beta) {
  return Observable(ComplexMatrix::identity(2) * Complex(alpha) + spin_along(beta));
}

std::pair<double, double> eig_herm2(const Observable& h) {
  if (h.dim() != 2) throw DimensionError("eig_herm2 needs a 2x2 operator");
  const auto& m = h.matrix();
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_trace = 0.5 * (a + d);
  // sqrt((tr/2)^2 - det) written without cancellation.
  const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  return {half_trace + radius, half_trace - radius};
}

double expectation(const DensityOperator& rho, const Observable& a) {
  if (rho.dim() != a.dim()) throw DimensionError("state and observable dimensions differ");
  const auto& r = rho.matrix();
  const auto& m = a.matrix();
  Complex t = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t k = 0; k < r.cols(); ++k) t += r(i, k) * m(k, i);
  if (std::abs(t.imag()) > kTolEq)
    throw VerificationError("expectation has a non-negligible imaginary part");
  return t.real();
}

double expectation(const StateVector& psi, const Observable& a) {
  if (psi.dim() != a.dim()) throw DimensionError("state and observable dimensions differ");
  const Complex t = inner(psi.amplitudes(), qfound::apply(a.matrix(), psi.amplitudes()));
  if (std::abs(t.imag()) > kTolEq)
    throw VerificationError("expectation has a non-negligible imaginary part");
  return t.real();
}

Observable projector(const StateVector& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix p(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) p(r, c) = psi[r] * std::conj(psi[c]);
  return Observable(std::move(p));
}

bool is_projector(const ComplexMatrix& p, double tol) {
  return p.is_hermitian(tol) && (p * p).approx_equal(p, tol);
}

int numerical_rank(const ComplexMatrix& hermitian) {
  const auto values = eigvalsh(hermitian);
  return static_cast<int>(
      std::count_if(values.begin(), values.end(), [](double v) { return std::abs(v) > kTolPsd; }));
}

Intersection intersection_projector(const Observable& p, const Observable& q) {
  if (p.dim() != q.dim()) throw DimensionError("projectors of different dimension");
  if (!is_projector(p.matrix()) || !is_projector(q.matrix()))
    throw InputError("intersection_projector needs two projectors");
  const std::size_t d = p.dim();
  // 2I - P - Q >= 0 with a zero eigenvalue exactly on the common +1 space.
  const ComplexMatrix gap = ComplexMatrix::identity(d) * Complex(2.0) - p.matrix() - q.matrix();
  const EigenSystem es = eigh(gap);
  ComplexMatrix out(d, d);
  int rank = 0;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    if (std::abs(es.values[k]) > kTolPsd) continue;
    out += projector(es.vectors[k]).matrix();
    ++rank;
  }
  return {Observable(std::move(out)), rank};
}

// ---------------------------------------------------------------------------
// Random generation

double standard_normal(Rng& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

StateVector random_state(std::size_t dim, Rng& rng) {
  std::vector<Complex> amps(dim);
  for (auto& a : amps) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    a = Complex(re, im);
  }
  return StateVector::normalize(std::move(amps));
}

DensityOperator random_density(std::size_t dim, Rng& rng) {
  std::vector<double> weights(dim);
  std::vector<StateVector> states;
  double total = 0.0;
  for (auto& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  for (auto& w : weights) w /= total;
  for (std::size_t k = 0; k < dim; ++k) states.push_back(random_state(dim, rng));
  return DensityOperator::mixture(weights, states);
}

Vec3 random_unit_vec3(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace qfound
