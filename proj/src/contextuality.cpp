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

#include "qfound/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfound/error.hpp"

namespace qfound::ks {

Ray3::Ray3(const Vec3& direction) : v_(normalized(direction)) {
  for (double& x : v_)
    if (std::abs(x) <= kTolEq) x = 0.0;
  for (double x : v_) {
    if (x == 0.0) continue;
    if (x < 0.0) v_ = scaled(v_, -1.0);
    break;
  }
  for (double& x : v_)
    if (x == 0.0) x = 0.0;  // drop negative zeros
}

bool Ray3::same_as(const Ray3& other, double tol) const {
  for (std::size_t i = 0; i < 3; ++i)
    if (std::abs(v_[i] - other.v_[i]) > tol) return false;
  return true;
}

std::vector<Ray3> rays_from_squared_cosines(const Vec3& squares) {
  std::array<double, 3> mags;
  for (std::size_t i = 0; i < 3; ++i) {
    if (squares[i] < 0.0) throw InputError("squared cosines must be nonnegative");
    mags[i] = std::sqrt(squares[i]);
  }
  std::sort(mags.begin(), mags.end());
  std::vector<Ray3> out;
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Vec3 v;
      for (std::size_t i = 0; i < 3; ++i) v[i] = ((signs >> i) & 1) ? -mags[i] : mags[i];
      Ray3 r(v);
      const bool seen =
          std::any_of(out.begin(), out.end(), [&](const Ray3& o) { return o.same_as(r); });
      if (!seen) out.push_back(r);
    }
  } while (std::next_permutation(mags.begin(), mags.end()));
  return out;
}

std::vector<Ray3> peres_rays() {
  const std::array<Vec3, 4> families = {
      Vec3{0.0, 0.0, 1.0}, Vec3{0.0, 0.5, 0.5}, Vec3{0.0, 1.0 / 3.0, 2.0 / 3.0},
      Vec3{0.25, 0.25, 0.5}};
  std::vector<Ray3> out;
  for (const auto& f : families) {
    const auto family = rays_from_squared_cosines(f);
    out.insert(out.end(), family.begin(), family.end());
  }
  return out;
}

OrthogonalityStructure orthogonality_structure(std::vector<Ray3> rays, double tol) {
  OrthogonalityStructure s;
  s.rays = std::move(rays);
  const int n = static_cast<int>(s.rays.size());
  std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(dot(s.rays[i].components(), s.rays[j].components())) <= tol) {
        orth[i][j] = orth[j][i] = true;
        s.pairs.push_back({i, j});
      }
  for (const auto& [i, j] : s.pairs)
    for (int k = j + 1; k < n; ++k)
      if (orth[i][k] && orth[j][k]) s.triads.push_back({i, j, k});
  return s;
}

// ---------------------------------------------------------------------------
// Colouring search

namespace {

enum class Cell : std::uint8_t { Unset, Green, Red };

class ColoringSearch {
 public:
  explicit ColoringSearch(const OrthogonalityStructure& s)
      : n_(static_cast<int>(s.rays.size())), partners_(n_), triads_of_(n_), triads_(s.triads) {
    for (const auto& [i, j] : s.pairs) {
      partners_[i].push_back(j);
      partners_[j].push_back(i);
    }
    for (std::size_t t = 0; t < triads_.size(); ++t)
      for (int r : triads_[t]) triads_of_[r].push_back(static_cast<int>(t));
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return partners_[a].size() > partners_[b].size();
    });
  }

  ColoringResult run() {
    ColoringResult result;
    std::vector<Cell> cells(n_, Cell::Unset);
    if (search(cells, result.nodes)) {
      result.satisfiable = true;
      result.coloring.reserve(n_);
      for (Cell c : solution_) result.coloring.push_back(c == Cell::Green ? Color::Green : Color::Red);
    }
    return result;
  }

 private:
  // Assigns `value` to `ray` and propagates to a fixpoint; false on conflict.
  bool assign(std::vector<Cell>& cells, int ray, Cell value) const {
    std::vector<std::pair<int, Cell>> queue{{ray, value}};
    while (!queue.empty()) {
      const auto [r, v] = queue.back();
      queue.pop_back();
      if (cells[r] == v) continue;
      if (cells[r] != Cell::Unset) return false;
      cells[r] = v;
      if (v == Cell::Green) {
        for (int p : partners_[r]) {
          if (cells[p] == Cell::Green) return false;
          if (cells[p] == Cell::Unset) queue.emplace_back(p, Cell::Red);
        }
      } else {
        for (int t : triads_of_[r]) {
          int reds = 0;
          int open = -1;
          for (int x : triads_[t]) {
            if (cells[x] == Cell::Red) ++reds;
            else if (cells[x] == Cell::Unset) open = x;
          }
          if (reds == 3) return false;
          if (reds == 2 && open >= 0) queue.emplace_back(open, Cell::Green);
        }
      }
    }
    return true;
  }

  bool search(const std::vector<Cell>& cells, std::int64_t& nodes) {
    const auto next = std::find_if(order_.begin(), order_.end(),
                                   [&](int r) { return cells[r] == Cell::Unset; });
    if (next == order_.end()) {
      solution_ = cells;
      return true;
    }
    for (Cell choice : {Cell::Green, Cell::Red}) {
      ++nodes;
      std::vector<Cell> trial = cells;
      if (assign(trial, *next, choice) && search(trial, nodes)) return true;
    }
    return false;
  }

  int n_;
  std::vector<std::vector<int>> partners_;
  std::vector<std::vector<int>> triads_of_;
  const std::vector<RayTriad>& triads_;
  std::vector<int> order_;
  std::vector<Cell> solution_;
};

}  // namespace

ColoringResult ks_color(const OrthogonalityStructure& structure) {
  return ColoringSearch(structure).run();
}

CertificateCheck verify_coloring(const OrthogonalityStructure& structure,
                                 const std::vector<Color>& coloring) {
  if (coloring.size() != structure.rays.size())
    return {false, "colouring has " + std::to_string(coloring.size()) + " entries for " +
                       std::to_string(structure.rays.size()) + " rays"};
  for (const auto& [i, j] : structure.pairs)
    if (coloring[i] == Color::Green && coloring[j] == Color::Green)
      return {false, "orthogonal rays " + std::to_string(i) + " and " + std::to_string(j) +
                         " are both GREEN"};
  for (const auto& t : structure.triads) {
    int greens = 0;
    for (int r : t) greens += coloring[r] == Color::Green ? 1 : 0;
    if (greens != 1)
      return {false, "triad (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                         std::to_string(t[2]) + ") has " + std::to_string(greens) + " GREEN"};
  }
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Mermin square

MerminSquare mermin_square() {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix x = sigma_x(), y = sigma_y(), z = sigma_z();
  MerminSquare sq;
  sq.cells = {{
      {kron(x, id), kron(id, x), kron(x, x)},
      {kron(id, y), kron(y, id), kron(y, y)},
      {kron(x, y), kron(y, x), kron(z, z)},
  }};
  sq.labels = {{
      {"X1", "X2", "X1 X2"},
      {"Y2", "Y1", "Y1 Y2"},
      {"X1 Y2", "X2 Y1", "Z1 Z2"},
  }};
  return sq;
}

namespace {

// Sign s with M = s I within kTolEq, or 0; `deviation` receives |M - s I|_max.
int identity_sign(const ComplexMatrix& m, double& deviation) {
  const ComplexMatrix id = ComplexMatrix::identity(m.rows());
  const double plus = m.max_abs_diff(id);
  const double minus = m.max_abs_diff(id * Complex(-1.0));
  deviation = std::max(deviation, std::min(plus, minus));
  if (plus <= kTolEq) return 1;
  if (minus <= kTolEq) return -1;
  return 0;
}

bool commute(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b).approx_equal(b * a);
}

}  // namespace

MerminVerification mermin_verify(const MerminSquare& square) {
  MerminVerification v;
  const auto& c = square.cells;
  const ComplexMatrix id = ComplexMatrix::identity(c[0][0].rows());

  v.entries_square_to_identity = true;
  for (const auto& row : c)
    for (const auto& m : row) v.entries_square_to_identity &= (m * m).approx_equal(id);

  v.lines_commute = true;
  v.reversed_order_agrees = true;
  for (int k = 0; k < 3; ++k) {
    const std::array<const ComplexMatrix*, 3> row = {&c[k][0], &c[k][1], &c[k][2]};
    const std::array<const ComplexMatrix*, 3> col = {&c[0][k], &c[1][k], &c[2][k]};
    for (const auto& line : {row, col}) {
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) v.lines_commute &= commute(*line[i], *line[j]);
      const ComplexMatrix forward = *line[0] * *line[1] * *line[2];
      const ComplexMatrix backward = *line[2] * *line[1] * *line[0];
      v.reversed_order_agrees &= forward.approx_equal(backward);
    }
    v.row_signs[k] = identity_sign(*row[0] * *row[1] * *row[2], v.max_deviation);
    v.column_signs[k] = identity_sign(*col[0] * *col[1] * *col[2], v.max_deviation);
  }
  v.matches_expected = v.entries_square_to_identity && v.lines_commute &&
                       v.reversed_order_agrees && v.row_signs == std::array<int, 3>{1, 1, 1} &&
                       v.column_signs == std::array<int, 3>{1, 1, -1};
  return v;
}

AssignmentSearch mermin_assignment_search(const std::array<int, 3>& row_targets,
                                          const std::array<int, 3>& column_targets) {
  for (int t : row_targets)
    if (t != 1 && t != -1) throw InputError("row targets must be +-1");
  for (int t : column_targets)
    if (t != 1 && t != -1) throw InputError("column targets must be +-1");

  AssignmentSearch out;
  for (int bits = 0; bits < (1 << 9); ++bits) {
    ++out.checked;
    std::array<std::array<int, 3>, 3> v;
    for (int cell = 0; cell < 9; ++cell) v[cell / 3][cell % 3] = ((bits >> cell) & 1) ? -1 : 1;
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      ok &= v[k][0] * v[k][1] * v[k][2] == row_targets[k];
      ok &= v[0][k] * v[1][k] * v[2][k] == column_targets[k];
    }
    out.satisfying += ok ? 1 : 0;
  }
  out.row_parity = row_targets[0] * row_targets[1] * row_targets[2];
  out.column_parity = column_targets[0] * column_targets[1] * column_targets[2];
  out.summary = "product of all nine values is " + std::to_string(out.row_parity) +
                " by rows and " + std::to_string(out.column_parity) + " by columns; " +
                (out.row_parity == out.column_parity
                     ? "the constraints are compatible"
                     : "no noncontextual +-1 assignment exists");
  return out;
}

}  // namespace qfound::ks
