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

#include "qfound/vn_ensemble.hpp"

#include <cmath>
#include <numbers>

#include "qfound/error.hpp"

namespace qfound::vn {

ExpectationOracle oracle_from_density(const DensityOperator& rho) {
  return {rho.dim(), [rho](const Observable& a) { return expectation(rho, a); }, true};
}

BasisObservables basis_observables(std::size_t dim) {
  if (dim == 0) throw InputError("basis dimension must be positive");
  BasisObservables basis;
  basis.dim = dim;
  for (std::size_t n = 0; n < dim; ++n) {
    ComplexMatrix u(dim, dim);
    u(n, n) = 1.0;
    basis.diagonal.emplace_back(std::move(u));
  }
  const Complex i(0.0, 1.0);
  for (std::size_t n = 1; n < dim; ++n)
    for (std::size_t m = 0; m < n; ++m) {
      ComplexMatrix v(dim, dim), w(dim, dim);
      v(n, m) = 1.0;
      v(m, n) = 1.0;
      w(n, m) = i;
      w(m, n) = -i;
      basis.off_diagonal.push_back({n, m, Observable(std::move(v)), Observable(std::move(w))});
    }
  return basis;
}

DensityOperator reconstruct_density(const ExpectationOracle& oracle) {
  if (oracle.dim == 0 || !oracle.eval) throw InputError("oracle is not queryable");
  const std::size_t d = oracle.dim;
  const double norm = oracle.eval(Observable(ComplexMatrix::identity(d)));
  if (std::abs(norm - 1.0) > kTolEq)
    throw MalformedEnsembleError("oracle assigns <I> = " + std::to_string(norm) +
                                 "; no normalized ensemble does that");

  const BasisObservables basis = basis_observables(d);
  ComplexMatrix rho(d, d);
  for (std::size_t n = 0; n < d; ++n) rho(n, n) = oracle.eval(basis.diagonal[n]);
  for (const auto& od : basis.off_diagonal) {
    const Complex entry = 0.5 * Complex(oracle.eval(od.v), oracle.eval(od.w));
    rho(od.n, od.m) = entry;
    rho(od.m, od.n) = std::conj(entry);
  }

  if (std::abs(rho.trace() - 1.0) > kTolEq)
    throw MalformedEnsembleError("reconstructed matrix does not have unit trace");
  try {
    return DensityOperator(std::move(rho));
  } catch (const InputError& e) {
    throw MalformedEnsembleError(std::string(oracle.quantum_generated
                                                 ? "reconstruction failed: "
                                                 : "oracle is not a quantum ensemble: ") +
                                 e.what());
  }
}

std::vector<ScanPoint> dispersion_scan(const DensityOperator& rho, const StateVector& phi1,
                                       const StateVector& phi2, int steps) {
  if (steps < 2) throw InputError("dispersion_scan needs at least 2 steps");
  if (phi1.dim() != rho.dim() || phi2.dim() != rho.dim())
    throw DimensionError("scan states do not match the density operator");
  if (std::abs(inner(phi1, phi2)) > kTolEq) throw InputError("scan states are not orthogonal");

  std::vector<ScanPoint> out;
  out.reserve(static_cast<std::size_t>(steps));
  const std::size_t d = rho.dim();
  for (int k = 0; k < steps; ++k) {
    const double theta = 0.5 * std::numbers::pi * k / (steps - 1);
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<Complex> amps(d);
    for (std::size_t i = 0; i < d; ++i) amps[i] = c * phi1[i] + s * phi2[i];
    const StateVector phi = StateVector::normalize(std::move(amps));
    out.push_back({theta, expectation(phi, Observable(rho.matrix()))});
  }
  return out;
}

namespace {

bool inside_margin(double v) { return v > kWitnessMargin && v < 1.0 - kWitnessMargin; }

StateVector rotate_toward(const StateVector& from, const StateVector& to, double theta) {
  std::vector<Complex> amps(from.dim());
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] = std::cos(theta) * from[i] + std::sin(theta) * to[i];
  return StateVector::normalize(std::move(amps));
}

}  // namespace

DispersionWitness dispersion_free_witness(const DensityOperator& rho) {
  if (rho.dim() < 2) throw InputError("dispersion witness needs dimension >= 2");
  const EigenSystem es = eigh(rho.matrix());
  const Observable r(rho.matrix());

  StateVector phi = rotate_toward(es.vectors[0], es.vectors[1], 0.25 * std::numbers::pi);
  double value = expectation(phi, r);
  if (inside_margin(value)) return {phi, value, false};

  constexpr int kGrid = 64;
  for (std::size_t j = 1; j < es.vectors.size(); ++j)
    for (int k = 1; k < kGrid; ++k) {
      const double theta = 0.5 * std::numbers::pi * k / kGrid;
      phi = rotate_toward(es.vectors[0], es.vectors[j], theta);
      value = expectation(phi, r);
      if (inside_margin(value)) return {phi, value, true};
    }
  throw VerificationError("no dispersion witness found");
}

Homogeneity homogeneity_check(const DensityOperator& rho) {
  const auto& m = rho.matrix();
  const ComplexMatrix sq = m * m;
  return {sq.approx_equal(m), numerical_rank(m), sq.trace().real()};
}

JauchPironReport jauch_piron_contradiction(const Vec3& a, const Vec3& b) {
  if (std::abs(norm(a) - 1.0) > kTolEq || std::abs(norm(b) - 1.0) > kTolEq)
    throw InputError("directions must be unit vectors");
  if (1.0 - std::abs(dot(a, b)) <= kTolEq)
    throw InputError("degenerate directions: a = +-b");

  const ComplexMatrix id = ComplexMatrix::identity(2);
  auto half_projector = [&](const Vec3& n, double sign) {
    return Observable((id + spin_along(n) * Complex(sign)) * Complex(0.5));
  };
  const Observable pa = half_projector(a, 1.0), ma = half_projector(a, -1.0);
  const Observable pb = half_projector(b, 1.0), mb = half_projector(b, -1.0);

  JauchPironReport rep;
  rep.a = a;
  rep.b = b;
  rep.a_family_resolves_identity = (pa.matrix() + ma.matrix()).approx_equal(id);
  rep.b_family_resolves_identity = (pb.matrix() + mb.matrix()).approx_equal(id);
  rep.cross_ranks = {intersection_projector(pa, pb).rank, intersection_projector(pa, mb).rank,
                     intersection_projector(ma, pb).rank, intersection_projector(ma, mb).rank};
  rep.all_cross_intersections_zero = true;
  for (int r : rep.cross_ranks) rep.all_cross_intersections_zero &= (r == 0);
  rep.conclusion =
      rep.all_cross_intersections_zero
          ? "A n B = 0 for every cross pair: a 0/1 valuation with <A> = <B> = 1 would need "
            "<A n B> = 1, but A n B is the zero projector, so no dispersion-free state exists"
          : "a cross intersection is nonzero; the directions do not give a contradiction";
  return rep;
}

}  // namespace qfound::vn
