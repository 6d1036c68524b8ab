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

#include "qfound/nonlocality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfound/error.hpp"
#include "qfound/optimize.hpp"
#include "qfound/rng.hpp"

namespace qfound::nonlocal {

SpinSetting::SpinSetting(const Vec3& direction) : d_(direction) {
  if (std::abs(norm(direction) - 1.0) > kTolEq) throw InputError("spin setting must be a unit vector");
}

SpinSetting SpinSetting::from_angles(double theta, double phi) {
  return SpinSetting(Vec3{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                          std::cos(theta)});
}

ChshSettings reference_chsh_settings() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {SpinSetting({0.0, 1.0, 0.0}), SpinSetting({1.0, 0.0, 0.0}), SpinSetting({h, h, 0.0}),
          SpinSetting({h, -h, 0.0})};
}

StateVector singlet_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  return StateVector({0.0, h, -h, 0.0});
}

StateVector product_state() { return StateVector::basis(4, 0); }

double qm_correlator(const StateVector& psi, const SpinSetting& a, const SpinSetting& b) {
  if (psi.dim() != 4) throw DimensionError("correlator needs a two-qubit state");
  return expectation(psi, Observable(kron(spin_along(a.direction()), spin_along(b.direction()))));
}

double bell_original_lhs(const StateVector& psi, const SpinSetting& a, const SpinSetting& b,
                         const SpinSetting& c, int eta_a, int eta_b, int eta_c) {
  for (int eta : {eta_a, eta_b, eta_c})
    if (eta != 1 && eta != -1) throw InputError("eta values must be +-1");
  return eta_a * eta_b * qm_correlator(psi, a, b) + eta_a * eta_c * qm_correlator(psi, a, c) +
         eta_b * eta_c * qm_correlator(psi, b, c);
}

double chsh_value(const StateVector& psi, const ChshSettings& s) {
  return std::abs(qm_correlator(psi, s.a, s.b) - qm_correlator(psi, s.a, s.b_prime)) +
         std::abs(qm_correlator(psi, s.a_prime, s.b) + qm_correlator(psi, s.a_prime, s.b_prime));
}

double tsirelson_bound() { return 2.0 * std::numbers::sqrt2; }

namespace {

// T_ij = <psi| sigma_i (x) sigma_j |psi>, so P(a, b) = a^T T b.
using Tensor = std::array<std::array<double, 3>, 3>;

Tensor correlation_tensor(const StateVector& psi) {
  const std::array<ComplexMatrix, 3> s = {sigma_x(), sigma_y(), sigma_z()};
  Tensor t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = expectation(psi, Observable(kron(s[i], s[j])));
  return t;
}

Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double bilinear(const Tensor& t, const Vec3& a, const Vec3& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i] * t[i][j] * b[j];
  return s;
}

}  // namespace

ChshOptimum chsh_optimize(const StateVector& psi, int restarts, double tol, std::uint64_t seed) {
  if (psi.dim() != 4) throw DimensionError("CHSH needs a two-qubit state");
  if (restarts < 1) throw InputError("restarts must be >= 1");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");

  const Tensor t = correlation_tensor(psi);
  auto objective = [&t](const std::vector<double>& x) {
    const Vec3 a = direction(x[0], x[1]), ap = direction(x[2], x[3]);
    const Vec3 b = direction(x[4], x[5]), bp = direction(x[6], x[7]);
    return std::abs(bilinear(t, a, b) - bilinear(t, a, bp)) +
           std::abs(bilinear(t, ap, b) + bilinear(t, ap, bp));
  };
  const std::vector<opt::Axis> axes(8, opt::Axis{0.0, 2.0 * std::numbers::pi, true});

  std::vector<opt::AscentResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> x0(8);
    for (int k = 0; k < 4; ++k) {
      x0[2 * k] = std::acos(rng.uniform(-1.0, 1.0));
      x0[2 * k + 1] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    results[static_cast<std::size_t>(r)] = opt::coordinate_ascent(objective, x0, axes, tol);
  }

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[r].value > results[best].value) best = r;
  const auto& x = results[best].x;
  ChshSettings s{SpinSetting::from_angles(x[0], x[1]), SpinSetting::from_angles(x[2], x[3]),
                 SpinSetting::from_angles(x[4], x[5]), SpinSetting::from_angles(x[6], x[7])};
  const double value = chsh_value(psi, s);
  return {s, value, best};
}

// ---------------------------------------------------------------------------
// GHZ

StateVector ghz_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<Complex> amps(8);
  amps[0] = h;
  amps[7] = -h;
  return StateVector(std::move(amps));
}

std::vector<Stabilizer> ghz_stabilizers() {
  const ComplexMatrix x = sigma_x(), y = sigma_y();
  return {
      {"X1 Y2 Y3", kron({x, y, y}), 1},
      {"Y1 X2 Y3", kron({y, x, y}), 1},
      {"Y1 Y2 X3", kron({y, y, x}), 1},
      {"X1 X2 X3", kron({x, x, x}), -1},
  };
}

double stabilizer_residual(const Stabilizer& s, const StateVector& psi) {
  const auto out = qfound::apply(s.op, psi.amplitudes());
  double worst = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k)
    worst = std::max(worst, std::abs(out[k] - static_cast<double>(s.eigenvalue) * psi[k]));
  return worst;
}

GhzSearch ghz_assignment_search(const std::array<int, 4>& targets) {
  for (int t : targets)
    if (t != 1 && t != -1) throw InputError("GHZ targets must be +-1");
  GhzSearch out;
  for (int bits = 0; bits < (1 << 6); ++bits) {
    ++out.checked;
    auto m = [&](int bit) { return ((bits >> bit) & 1) ? -1 : 1; };
    // bits 0..2: m_x of particles 1..3, bits 3..5: m_y.
    const int x1 = m(0), x2 = m(1), x3 = m(2), y1 = m(3), y2 = m(4), y3 = m(5);
    const bool ok = x1 * y2 * y3 == targets[0] && y1 * x2 * y3 == targets[1] &&
                    y1 * y2 * x3 == targets[2] && x1 * x2 * x3 == targets[3];
    out.satisfying += ok ? 1 : 0;
  }
  // Each m_y appears twice in the first three products and squares to 1.
  out.implied_xxx = targets[0] * targets[1] * targets[2];
  out.required_xxx = targets[3];
  out.summary = "the three XYY relations force m1x m2x m3x = " + std::to_string(out.implied_xxx) +
                ", the XXX relation requires " + std::to_string(out.required_xxx) + "; " +
                (out.implied_xxx == out.required_xxx ? "consistent"
                                                     : "no local realistic assignment exists");
  return out;
}

// ---------------------------------------------------------------------------
// Hardy

HardyParams::HardyParams(double p1, double p2) : p1_(p1), p2_(p2) {
  if (!(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0))
    throw InputError("Hardy parameters must lie in the open interval (0, 1)");
}

double hardy_probability(double p1, double p2) {
  HardyParams{p1, p2};  // domain check
  return p1 * (1.0 - p1) * p2 * (1.0 - p2) / (1.0 - p1 * p2);
}

namespace {

// Two-qubit index with particle 1 as the more significant bit.
constexpr std::size_t idx(std::size_t q1, std::size_t q2) { return 2 * q1 + q2; }

StateVector fix_phase(std::vector<Complex> v) {
  for (const Complex& x : v)
    if (std::abs(x) > kTolEq) {
      const Complex phase = std::conj(x) / std::abs(x);
      for (Complex& y : v) y *= phase;
      break;
    }
  return StateVector::normalize(std::move(v));
}

// Unit w with sum_j conj(w_j) phi_j = 0.
StateVector orthogonal_to(const std::vector<Complex>& phi) {
  return fix_phase({std::conj(phi[1]), -std::conj(phi[0])});
}

QubitBasis complete(const StateVector& v) {
  return {fix_phase({-std::conj(v[1]), std::conj(v[0])}), v};
}

ComplexMatrix ket_bra(const StateVector& s) { return projector(s).matrix(); }

double residual_norm(const ComplexMatrix& op, const StateVector& psi) {
  return std::sqrt(squared_norm(qfound::apply(op, psi.amplitudes())));
}

}  // namespace

HardyConstruction hardy_build(const HardyParams& params) {
  const double p1 = params.p1(), p2 = params.p2();
  const double scale = std::sqrt(1.0 - p1 * p2);
  constexpr std::size_t u = 0, v = 1;
  std::vector<Complex> amps(4);
  amps[idx(v, v)] = std::sqrt((1.0 - p1) * (1.0 - p2)) / scale;
  amps[idx(u, v)] = -std::sqrt(p1 * (1.0 - p2)) / scale;
  amps[idx(v, u)] = -std::sqrt(p2 * (1.0 - p1)) / scale;
  StateVector psi(std::move(amps));

  // Contract the unprimed v out of one particle, then take the orthocomplement.
  const std::vector<Complex> rest_2 = {psi[idx(v, 0)], psi[idx(v, 1)]};
  const std::vector<Complex> rest_1 = {psi[idx(0, v)], psi[idx(1, v)]};
  const QubitBasis primed_2 = complete(orthogonal_to(rest_2));
  const QubitBasis primed_1 = complete(orthogonal_to(rest_1));

  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix unprimed_u = ket_bra(StateVector::basis(2, u));
  const std::array<double, 3> residuals = {
      residual_norm(kron(unprimed_u, unprimed_u), psi),
      residual_norm(kron(id - unprimed_u, ket_bra(primed_2.v)), psi),
      residual_norm(kron(ket_bra(primed_1.v), id - unprimed_u), psi),
  };
  for (double r : residuals)
    if (r > kTolEq) throw VerificationError("Hardy condition violated by construction");

  std::vector<Complex> both(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) both[idx(i, j)] = primed_1.v[i] * primed_2.v[j];
  const double p = std::norm(inner(both, psi.amplitudes()));
  return {params, std::move(psi), primed_1, primed_2, p, residuals};
}

HardyOptimum hardy_optimize(int grid, double tol) {
  if (grid < 10) throw InputError("Hardy grid must be >= 10");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  double best = -1.0, b1 = 0.5, b2 = 0.5;
  for (int i = 1; i < grid; ++i)
    for (int j = 1; j < grid; ++j) {
      const double x = static_cast<double>(i) / grid, y = static_cast<double>(j) / grid;
      const double p = hardy_probability(x, y);
      if (p > best) {
        best = p;
        b1 = x;
        b2 = y;
      }
    }
  constexpr double kEdge = 1e-12;
  const std::vector<opt::Axis> axes(2, opt::Axis{kEdge, 1.0 - kEdge, false});
  const auto refined = opt::coordinate_ascent(
      [](const std::vector<double>& x) { return hardy_probability(x[0], x[1]); }, {b1, b2}, axes,
      tol);
  return {HardyParams(refined.x[0], refined.x[1]), refined.value};
}

// ---------------------------------------------------------------------------
// No-signalling

double no_signalling_check(const DensityOperator& rho, const Observable& a,
                           const std::vector<Observable>& b_projectors) {
  if (b_projectors.empty()) throw InputError("need at least one projector");
  const std::size_t d = rho.dim();
  if (a.dim() != d) throw DimensionError("observable does not match the state");
  ComplexMatrix total(d, d);
  for (std::size_t i = 0; i < b_projectors.size(); ++i) {
    const auto& p = b_projectors[i].matrix();
    if (p.rows() != d) throw DimensionError("projector does not match the state");
    if (!is_projector(p)) throw InputError("measurement operator is not a projector");
    if (!(a.matrix() * p).approx_equal(p * a.matrix()))
      throw InputError("observable does not commute with the distant measurement");
    for (std::size_t j = i + 1; j < b_projectors.size(); ++j)
      if (!(p * b_projectors[j].matrix()).approx_equal(ComplexMatrix(d, d)))
        throw InputError("projectors are not mutually orthogonal");
    total += p;
  }
  if (!total.approx_equal(ComplexMatrix::identity(d)))
    throw InputError("projectors do not resolve the identity");

  ComplexMatrix after(d, d);
  for (const auto& pb : b_projectors) after += pb.matrix() * rho.matrix() * pb.matrix();
  const DensityOperator rho_after(std::move(after));
  return std::abs(expectation(rho_after, a) - expectation(rho, a));
}

}  // namespace qfound::nonlocal
