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

#include <functional>
#include <vector>

namespace qfound::opt {

struct LineMax {
  double x;
  double value;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi];
/// stops once the bracket is narrower than `xtol`.
LineMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           double xtol);

/// Search range of one coordinate. A periodic axis is searched over a window
/// of width (upper - lower) centred on the current value.
struct Axis {
  double lower;
  double upper;
  bool periodic = false;
};

struct AscentResult {
  std::vector<double> x;
  double value;
  int sweeps;
};

/**
 * Coordinate-wise maximization. Each line search scans `grid` evenly spaced
 * points over the axis window, then runs golden-section inside the two cells
 * around the best point. A move is kept only if it improves f, so the value
 * is monotone. Stops when a full sweep improves f by less than tol^2 or after
 * max_sweeps.
 */
AscentResult coordinate_ascent(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, const std::vector<Axis>& axes,
                               double tol, int grid = 24, int max_sweeps = 2000);

}  // namespace qfound::opt
