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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qfound/qmath.hpp"

namespace qfound::vn {

/**
 * A queryable expectation functional <R> on observables of dimension `dim`.
 *
 * `eval` is called only on the dim^2 members of basis_observables() and on
 * the identity; it must return the same answer for repeated queries.
 */
struct ExpectationOracle {
  std::size_t dim = 0;
  std::function<double(const Observable&)> eval;
  /// Set when eval is Tr(rho .) for a genuine density operator.
  bool quantum_generated = false;
};

/// Oracle answering Tr(rho R).
ExpectationOracle oracle_from_density(const DensityOperator& rho);

/**
 * Hermitian basis: U_nn = |n><n|, V_nm = |n><m| + |m><n| and
 * W_nm = i(|n><m| - |m><n|) for n > m.
 */
struct BasisObservables {
  std::size_t dim = 0;
  std::vector<Observable> diagonal;  ///< U_nn, n = 0..dim-1
  struct OffDiagonal {
    std::size_t n, m;  ///< n > m
    Observable v, w;
  };
  std::vector<OffDiagonal> off_diagonal;

  std::size_t size() const { return diagonal.size() + 2 * off_diagonal.size(); }
};

BasisObservables basis_observables(std::size_t dim);

/**
 * Rebuilds rho from the oracle: rho_nn = <U_nn>, rho_nm = (<V_nm> + i<W_nm>)/2
 * for n > m and rho_mn = conj(rho_nm).
 *
 * Throws MalformedEnsembleError when <I> differs from 1 by more than kTolEq,
 * or when a quantum-generated oracle yields a non-PSD matrix.
 */
DensityOperator reconstruct_density(const ExpectationOracle& oracle);

struct ScanPoint {
  double theta;
  double value;
};

/// <phi(theta)|rho|phi(theta)> for phi = cos(theta) phi1 + sin(theta) phi2 on
/// `steps` evenly spaced theta in [0, pi/2], both ends included.
std::vector<ScanPoint> dispersion_scan(const DensityOperator& rho, const StateVector& phi1,
                                       const StateVector& phi2, int steps);

/// Lower edge of the open interval a witness value must fall in.
inline constexpr double kWitnessMargin = 0.01;

struct DispersionWitness {
  StateVector phi;
  double value;  ///< <phi|rho|phi>, inside (margin, 1 - margin)
  bool from_fallback_scan;
};

/**
 * A state phi whose projector has <P_phi> strictly between 0 and 1 under rho,
 * i.e. <P_phi^2> != <P_phi>^2. First candidate: the leading eigenvector rotated
 * by pi/4 toward the second; otherwise a grid scan over eigenvector pairs.
 */
DispersionWitness dispersion_free_witness(const DensityOperator& rho);

struct Homogeneity {
  bool homogeneous;  ///< rho^2 == rho within kTolEq
  int rank;
  double purity;  ///< Tr(rho^2)
};

Homogeneity homogeneity_check(const DensityOperator& rho);

struct JauchPironReport {
  Vec3 a, b;
  /// P(+a) + P(-a) and P(+b) + P(-b) equal I within kTolEq.
  bool a_family_resolves_identity = false;
  bool b_family_resolves_identity = false;
  /// Ranks of range(P(sa a)) n range(P(sb b)) for (sa, sb) in (+,+), (+,-), (-,+), (-,-).
  std::array<int, 4> cross_ranks{};
  bool all_cross_intersections_zero = false;
  std::string conclusion;
};

/// Throws InputError unless a, b are unit and a != +-b.
JauchPironReport jauch_piron_contradiction(const Vec3& a, const Vec3& b);

}  // namespace qfound::vn
