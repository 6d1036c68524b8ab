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

#include "qfound/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "qfound/error.hpp"

namespace qfound::opt {

LineMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           double xtol) {
  if (!(hi > lo)) throw InputError("golden_section_max needs lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? LineMax{c, fc} : LineMax{d, fd};
}

AscentResult coordinate_ascent(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, const std::vector<Axis>& axes,
                               double tol, int grid, int max_sweeps) {
  if (x0.size() != axes.size()) throw InputError("one axis per coordinate required");
  if (grid < 3) throw InputError("line grid needs at least 3 points");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const double xtol = std::min(tol, 1e-10);

  std::vector<double> x = std::move(x0);
  double best = f(x);
  int sweeps = 0;
  while (sweeps < max_sweeps) {
    ++sweeps;
    const double start = best;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Axis& ax = axes[i];
      const double width = ax.upper - ax.lower;
      const double lo = ax.periodic ? x[i] - 0.5 * width : ax.lower;
      const double step = width / (grid - 1);
      auto along = [&](double t) {
        std::vector<double> y = x;
        y[i] = t;
        return f(y);
      };
      int best_k = 0;
      double best_grid = -INFINITY;
      for (int k = 0; k < grid; ++k) {
        const double v = along(lo + k * step);
        if (v > best_grid) {
          best_grid = v;
          best_k = k;
        }
      }
      const double g = lo + best_k * step;
      double a = g - step, b = g + step;
      if (!ax.periodic) {
        a = std::max(a, ax.lower);
        b = std::min(b, ax.upper);
      }
      LineMax line = golden_section_max(along, a, b, xtol);
      if (best_grid > line.value) line = {g, best_grid};
      if (line.value > best) {
        x[i] = line.x;
        best = line.value;
      }
    }
    if (best - start < tol * tol) break;
  }
  return {std::move(x), best, sweeps};
}

}  // namespace qfound::opt
