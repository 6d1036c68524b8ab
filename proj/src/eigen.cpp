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

// Cyclic Jacobi eigensolver for small complex Hermitian matrices.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfound/error.hpp"
#include "qfound/qmath.hpp"

namespace qfound {
namespace {

constexpr double kOffDiagonalStop = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One two-sided rotation in the (p, q) plane that annihilates a(p, q).
// U = D R with D = diag(1, conj(e)) making the pivot real and R the usual
// real Jacobi rotation; a <- U^H a U and v <- v U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex e = apq / mag;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * std::conj(e);
  const Complex uqq = c * std::conj(e);

  const std::size_t n = a.rows();
  // a <- a U (columns p, q)
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  // a <- U^H a (rows p, q)
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

}  // namespace

EigenSystem eigh(const ComplexMatrix& hermitian) {
  if (!hermitian.is_square()) throw DimensionError("eigh needs a square matrix");
  if (!hermitian.is_hermitian()) throw InputError("eigh needs a Hermitian matrix");
  const std::size_t n = hermitian.rows();
  ComplexMatrix a = hermitian;
  ComplexMatrix v = ComplexMatrix::identity(n);

  int sweep = 0;
  while (off_diagonal_norm(a) >= kOffDiagonalStop) {
    if (++sweep > kMaxSweeps) throw VerificationError("Jacobi iteration did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem out;
  for (std::size_t k : order) {
    out.values.push_back(a(k, k).real());
    std::vector<Complex> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, k);
    out.vectors.push_back(StateVector::normalize(std::move(col)));
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& hermitian) {
  if (hermitian.rows() == 2 && hermitian.cols() == 2) {
    const auto [hi, lo] = eig_herm2(Observable(hermitian));
    return {hi, lo};
  }
  return eigh(hermitian).values;
}

}  // namespace qfound
