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
#include <cstdint>
#include <string>
#include <vector>

#include "qfound/qmath.hpp"

namespace qfound::nonlocal {

/// Unit Stern-Gerlach direction.
class SpinSetting {
 public:
  /// Throws InputError unless |direction| = 1 within kTolEq.
  explicit SpinSetting(const Vec3& direction);
  /// Direction from polar angle theta and azimuth phi.
  static SpinSetting from_angles(double theta, double phi);

  const Vec3& direction() const { return d_; }

 private:
  Vec3 d_;
};

struct ChshSettings {
  SpinSetting a, a_prime, b, b_prime;
};

/// a = (0,1,0), b = (1,1,0)/sqrt2, a' = (1,0,0), b' = (1,-1,0)/sqrt2.
ChshSettings reference_chsh_settings();

/// (|01> - |10>) / sqrt2; particle 1 is the more significant qubit.
StateVector singlet_state();
/// |00>.
StateVector product_state();

/// <psi| (sigma.a) (x) (sigma.b) |psi> for a two-qubit psi.
double qm_correlator(const StateVector& psi, const SpinSetting& a, const SpinSetting& b);

/// eta_a eta_b P(a,b) + eta_a eta_c P(a,c) + eta_b eta_c P(b,c); local models keep it <= 1.
double bell_original_lhs(const StateVector& psi, const SpinSetting& a, const SpinSetting& b,
                         const SpinSetting& c, int eta_a, int eta_b, int eta_c);
inline constexpr double kBellOriginalBound = 1.0;

/// S = |P(a,b) - P(a,b')| + |P(a',b) + P(a',b')|.
double chsh_value(const StateVector& psi, const ChshSettings& s);
inline constexpr double kLocalChshBound = 2.0;
double tsirelson_bound();

struct ChshOptimum {
  ChshSettings settings;
  double value;
  int best_restart;
};

/**
 * Multi-start coordinate ascent of chsh_value over the 8 spherical angles of
 * (a, a', b, b'). Restart r starts from angles drawn from Rng::stream(seed, r).
 * Restarts run in parallel; the reduction keeps the largest value, ties going
 * to the lowest restart index, so the result does not depend on thread count.
 */
ChshOptimum chsh_optimize(const StateVector& psi, int restarts = 20, double tol = 1e-6,
                          std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// GHZ

/// (|000> - |111>) / sqrt2.
StateVector ghz_state();

struct Stabilizer {
  std::string label;  ///< e.g. "X1 Y2 Y3"
  ComplexMatrix op;
  int eigenvalue;  ///< op |ghz> = eigenvalue |ghz>
};

/// X1Y2Y3, Y1X2Y3, Y1Y2X3 with eigenvalue +1 and X1X2X3 with eigenvalue -1.
std::vector<Stabilizer> ghz_stabilizers();

/// max_k |(op psi)_k - eigenvalue psi_k|.
double stabilizer_residual(const Stabilizer& s, const StateVector& psi);

struct GhzSearch {
  std::int64_t checked = 0;
  std::int64_t satisfying = 0;
  /// Product of the three XYY-type targets: what local values force for m_x m_x m_x.
  int implied_xxx = 0;
  int required_xxx = 0;
  std::string summary;
};

/**
 * Exhaustive search over (m_x^i, m_y^i) in {+-1}^6 for assignments with
 * m1x m2y m3y = targets[0], m1y m2x m3y = targets[1], m1y m2y m3x = targets[2],
 * m1x m2x m3x = targets[3].
 */
GhzSearch ghz_assignment_search(const std::array<int, 4>& targets = {1, 1, 1, -1});

// ---------------------------------------------------------------------------
// Hardy

class HardyParams {
 public:
  /// Throws InputError unless 0 < p1, p2 < 1.
  HardyParams(double p1, double p2);

  double p1() const { return p1_; }
  double p2() const { return p2_; }

 private:
  double p1_, p2_;
};

/// One qubit's orthonormal pair.
struct QubitBasis {
  StateVector u, v;
};

struct HardyConstruction {
  HardyParams params;
  StateVector psi;
  QubitBasis primed_1, primed_2;
  double p;  ///< |<v1' v2'|psi>|^2
  /// Norms of U1 U2 psi, (1-U1) V2' psi, V1' (1-U2) psi.
  std::array<double, 3> condition_residuals;
};

/**
 * sqrt(1 - p1 p2) |psi> = sqrt((1-p1)(1-p2)) |v v> - sqrt(p1(1-p2)) |u v> - sqrt(p2(1-p1)) |v u>
 * with u = |0>, v = |1> on both particles. v2' is the unit vector with
 * <v (x) v2'|psi> = 0, v1' the one with <v1' (x) v|psi> = 0, and u' completes
 * each primed basis. Primed vectors have their first nonzero amplitude real
 * and positive. Throws VerificationError if a condition residual exceeds kTolEq.
 */
HardyConstruction hardy_build(const HardyParams& params);

/// p1 (1-p1) p2 (1-p2) / (1 - p1 p2).
double hardy_probability(double p1, double p2);

struct HardyOptimum {
  HardyParams params;
  double p;
};

/// Grid scan of hardy_probability on (0,1)^2 followed by coordinate-wise
/// golden-section refinement. Throws InputError for grid < 10.
HardyOptimum hardy_optimize(int grid = 100, double tol = 1e-8);

// ---------------------------------------------------------------------------
// No-signalling

/**
 * |Tr(rho' A) - Tr(rho A)| with rho' = sum_b P_b rho P_b.
 *
 * Throws InputError unless the P_b are mutually orthogonal projectors summing
 * to I and A commutes with each of them.
 */
double no_signalling_check(const DensityOperator& rho, const Observable& a,
                           const std::vector<Observable>& b_projectors);

}  // namespace qfound::nonlocal
