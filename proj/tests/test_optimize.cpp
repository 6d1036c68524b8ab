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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfound/error.hpp"
#include "qfound/optimize.hpp"

using namespace qfound;
using namespace qfound::opt;

TEST_SUITE("optimize") {

TEST_CASE("golden section finds an interior maximum") {
  const auto r = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 2.0, 1e-10);
  CHECK(std::abs(r.x - 0.3) <= 1e-9);
  CHECK(r.value <= 0.0);
  CHECK(r.value >= -1e-18);
}

TEST_CASE("golden section on a monotone function approaches the boundary") {
  const auto r = golden_section_max([](double x) { return x; }, 0.0, 1.0, 1e-10);
  CHECK(r.x >= 1.0 - 1e-9);
  CHECK_THROWS_AS(golden_section_max([](double x) { return x; }, 1.0, 1.0, 1e-6), InputError);
}

TEST_CASE("coordinate ascent on a coupled concave quadratic") {
  // Maximum at (1, -2); the cross term couples the coordinates.
  auto f = [](const std::vector<double>& x) {
    const double u = x[0] - 1.0, v = x[1] + 2.0;
    return -(u * u + v * v + 0.8 * u * v);
  };
  const auto r = coordinate_ascent(f, {0.0, 0.0}, {{-5, 5}, {-5, 5}}, 1e-8);
  CHECK(std::abs(r.x[0] - 1.0) <= 1e-6);
  CHECK(std::abs(r.x[1] + 2.0) <= 1e-6);
  CHECK(r.sweeps >= 2);
}

TEST_CASE("coordinate ascent never decreases the objective") {
  auto f = [](const std::vector<double>& x) { return std::cos(3 * x[0]) * std::sin(2 * x[1]); };
  const std::vector<double> x0 = {0.4, -0.2};
  const auto r = coordinate_ascent(f, x0, {{-3, 3}, {-3, 3}}, 1e-6);
  CHECK(r.value >= f(x0));
  CHECK(r.value == f(r.x));
  CHECK(std::abs(r.value - 1.0) <= 1e-9);
}

TEST_CASE("periodic axes search a window around the current point") {
  auto f = [](const std::vector<double>& x) { return std::cos(x[0] - 10.0); };
  const double two_pi = 2 * std::numbers::pi;
  const auto r = coordinate_ascent(f, {0.0}, {{0.0, two_pi, true}}, 1e-8);
  CHECK(std::abs(std::cos(r.x[0] - 10.0) - 1.0) <= 1e-12);
}

TEST_CASE("coordinate ascent argument validation") {
  auto f = [](const std::vector<double>& x) { return x[0]; };
  CHECK_THROWS_AS(coordinate_ascent(f, {0.0, 1.0}, {{0, 1}}, 1e-6), InputError);
  CHECK_THROWS_AS(coordinate_ascent(f, {0.0}, {{0, 1}}, 1e-6, 2), InputError);
  CHECK_THROWS_AS(coordinate_ascent(f, {0.0}, {{0, 1}}, 0.0), InputError);
}

}  // TEST_SUITE
