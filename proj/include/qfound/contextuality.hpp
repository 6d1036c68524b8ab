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
#include <iosfwd>
#include <string>
#include <vector>

#include "qfound/qmath.hpp"

namespace qfound::ks {

/// Dot products with |x| <= kTolOrth count as orthogonal.
inline constexpr double kTolOrth = 1e-9;

/**
 * Unit direction in real 3-space modulo the antipodal map. The stored
 * representative has its first nonzero component positive.
 */
class Ray3 {
 public:
  /// Normalizes and canonicalizes; throws InputError on a zero vector.
  explicit Ray3(const Vec3& direction);

  const Vec3& components() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  /// Same ray within `tol` (component-wise, after canonicalization).
  bool same_as(const Ray3& other, double tol = kTolEq) const;

 private:
  Vec3 v_;
};

/// All rays whose squared direction cosines are a permutation of `squares`,
/// with every sign choice, deduplicated modulo antipodes.
std::vector<Ray3> rays_from_squared_cosines(const Vec3& squares);

/// Peres' 33 rays: squared cosines (0,0,1), (0,1/2,1/2), (0,1/3,2/3), (1/4,1/4,1/2).
std::vector<Ray3> peres_rays();

using RayPair = std::array<int, 2>;
using RayTriad = std::array<int, 3>;

struct OrthogonalityStructure {
  std::vector<Ray3> rays;
  std::vector<RayPair> pairs;    ///< i < j, lexicographic
  std::vector<RayTriad> triads;  ///< i < j < k, mutually orthogonal, lexicographic
};

OrthogonalityStructure orthogonality_structure(std::vector<Ray3> rays, double tol = kTolOrth);

/// GREEN: the squared spin component is 0. RED: it is 1.
enum class Color : std::uint8_t { Green, Red };

struct ColoringResult {
  bool satisfiable = false;
  std::vector<Color> coloring;  ///< per ray, when satisfiable
  std::int64_t nodes = 0;       ///< decision branches explored
};

/**
 * Backtracking search for a KS colouring: every triad has exactly one GREEN
 * and no orthogonal pair is GREEN-GREEN.
 *
 * Branching order is descending orthogonality degree, ties by index, trying
 * GREEN before RED. After each decision, unit propagation runs to a fixpoint:
 * a GREEN ray forces its orthogonal partners RED, and a triad with two REDs
 * forces its third ray GREEN. Deterministic for a given input order.
 */
ColoringResult ks_color(const OrthogonalityStructure& structure);

struct CertificateCheck {
  bool valid = false;
  std::string reason;  ///< first violated constraint, empty when valid
};

/// Checks a colouring against both rules using only the structure's lists.
CertificateCheck verify_coloring(const OrthogonalityStructure& structure,
                                 const std::vector<Color>& coloring);

// ---------------------------------------------------------------------------
// Ray-set files: one ray per line, three whitespace-separated decimals,
// '#' starts a comment. Rays are canonicalized on load.

/// Throws InputError naming the offending line.
std::vector<Ray3> read_rays(std::istream& in);
std::vector<Ray3> read_ray_file(const std::string& path);
void write_rays(std::ostream& out, const std::vector<Ray3>& rays);

// ---------------------------------------------------------------------------
// Mermin square

/**
 * cells[row][col], rows H1..H3, columns V1..V3:
 *
 *   X1      X2      X1 X2
 *   Y2      Y1      Y1 Y2
 *   X1 Y2   X2 Y1   Z1 Z2
 */
struct MerminSquare {
  std::array<std::array<ComplexMatrix, 3>, 3> cells;
  std::array<std::array<std::string, 3>, 3> labels;
};

MerminSquare mermin_square();

struct MerminVerification {
  std::array<int, 3> row_signs{};     ///< product of row r is row_signs[r] * I
  std::array<int, 3> column_signs{};  ///< 0 when the product is not +-I
  bool entries_square_to_identity = false;
  bool lines_commute = false;
  bool reversed_order_agrees = false;
  /// rows (+1,+1,+1), columns (+1,+1,-1), and every check above holds.
  bool matches_expected = false;
  double max_deviation = 0.0;  ///< worst entrywise distance from the +-I it matched
};

MerminVerification mermin_verify(const MerminSquare& square);

struct AssignmentSearch {
  std::int64_t checked = 0;
  std::int64_t satisfying = 0;
  /// Product of all values implied by the row constraints and by the column constraints.
  int row_parity = 0;
  int column_parity = 0;
  std::string summary;
};

/// Exhaustive search over all 2^9 assignments v in {+-1}^9 for those whose
/// row and column products equal the given targets.
AssignmentSearch mermin_assignment_search(const std::array<int, 3>& row_targets = {1, 1, 1},
                                          const std::array<int, 3>& column_targets = {1, 1, -1});

}  // namespace qfound::ks
