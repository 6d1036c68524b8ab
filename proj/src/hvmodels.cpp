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

#include "qfound/hvmodels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qfound/error.hpp"

namespace qfound::hv {
namespace {

double spin_expectation(const Vec3& beta, const StateVector& psi) {
  if (psi.dim() != 2) throw DimensionError("Bell's model is for a single spin-1/2");
  const Complex m = inner(psi.amplitudes(), qfound::apply(spin_along(beta), psi.amplitudes()));
  return m.real();
}

// Upper-eigenvalue hit counts per shard; the merge is an integer sum.
struct Shard {
  std::int64_t begin, end;
};

std::vector<Shard> make_shards(std::int64_t n, int workers) {
  std::vector<Shard> shards(static_cast<std::size_t>(workers));
  for (int k = 0; k < workers; ++k)
    shards[static_cast<std::size_t>(k)] = {n * k / workers, n * (k + 1) / workers};
  return shards;
}

std::int64_t count_upper(double alpha, const Vec3& beta, double m, std::int64_t count,
                         Rng rng) {
  const double b = norm(beta);
  std::int64_t upper = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const double lambda = rng.uniform() - 0.5;
    const double v = alpha + b * sgn(m) * sgn(lambda * b + 0.5 * std::abs(m));
    upper += (v > alpha) ? 1 : 0;
  }
  return upper;
}

void check_mc_args(std::int64_t n, int workers) {
  if (n < kMinMcSamples) throw InputError("Monte Carlo needs at least 100 samples");
  if (workers < 1) throw InputError("worker count must be positive");
}

McEstimate finish(double alpha, const Vec3& beta, const StateVector& psi, std::int64_t n,
                  std::uint64_t seed, int workers, std::int64_t upper) {
  const double b = norm(beta);
  const double nd = static_cast<double>(n);
  const double q = 2.0 * static_cast<double>(upper) / nd - 1.0;  // mean of the +-1 factor
  McEstimate out;
  out.estimate = alpha + b * q;
  // Sample variance of values alpha +- b around their mean.
  const double variance = b * b * (1.0 - q * q) * nd / (nd - 1.0);
  out.std_error = std::sqrt(std::max(0.0, variance) / nd);
  out.exact = bell_hv_average_exact(alpha, beta, psi);
  out.samples = n;
  out.seed = seed;
  out.workers = workers;
  const double dev = std::abs(out.estimate - out.exact);
  out.consistent = out.std_error > 0.0 ? dev <= 5.0 * out.std_error : dev <= kTolEq;
  return out;
}

}  // namespace

BellHvState::BellHvState(StateVector psi, double lambda) : psi_(std::move(psi)), lambda_(lambda) {
  if (psi_.dim() != 2) throw DimensionError("Bell's model is for a single spin-1/2");
  if (!(lambda >= -0.5 && lambda <= 0.5)) throw InputError("lambda must lie in [-1/2, 1/2]");
}

double bell_hv_value(double alpha, const Vec3& beta, const BellHvState& state) {
  const double b = norm(beta);
  if (b == 0.0) return alpha;
  const double m = spin_expectation(beta, state.psi());
  return alpha + b * sgn(m) * sgn(state.lambda() * b + 0.5 * std::abs(m));
}

double bell_hv_average_exact(double alpha, const Vec3& beta, const StateVector& psi) {
  const double b = norm(beta);
  if (b == 0.0) return alpha;
  const double m = spin_expectation(beta, psi);
  // The second sgn flips at lambda0 = -|m| / (2|beta|), which lies in [-1/2, 0].
  const double lambda0 = std::clamp(-std::abs(m) / (2.0 * b), -0.5, 0.5);
  const double positive = 0.5 - lambda0;
  const double negative = lambda0 + 0.5;
  return alpha + b * sgn(m) * (positive - negative);
}

McEstimate bell_hv_average_mc_serial(double alpha, const Vec3& beta, const StateVector& psi,
                                     std::int64_t n, std::uint64_t seed, int workers) {
  check_mc_args(n, workers);
  const double m = norm(beta) == 0.0 ? 0.0 : spin_expectation(beta, psi);
  std::int64_t upper = 0;
  const auto shards = make_shards(n, workers);
  for (std::size_t k = 0; k < shards.size(); ++k)
    upper += count_upper(alpha, beta, m, shards[k].end - shards[k].begin, Rng::stream(seed, k));
  return finish(alpha, beta, psi, n, seed, workers, upper);
}

McEstimate bell_hv_average_mc(double alpha, const Vec3& beta, const StateVector& psi,
                              std::int64_t n, std::uint64_t seed, int workers) {
  check_mc_args(n, workers);
  const double m = norm(beta) == 0.0 ? 0.0 : spin_expectation(beta, psi);
  const auto shards = make_shards(n, workers);
  std::int64_t upper = 0;
#pragma omp parallel for schedule(static) reduction(+ : upper)
  for (int k = 0; k < workers; ++k) {
    const auto& s = shards[static_cast<std::size_t>(k)];
    upper += count_upper(alpha, beta, m, s.end - s.begin,
                         Rng::stream(seed, static_cast<std::uint64_t>(k)));
  }
  return finish(alpha, beta, psi, n, seed, workers, upper);
}

// ---------------------------------------------------------------------------
// Wigner weights

WignerWeights::WignerWeights(const std::array<double, 16>& w) : w_(w) {
  double total = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0)) throw InputError("Wigner weights must be nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > kTolEq) throw InputError("Wigner weights must sum to 1");
}

WignerWeights WignerWeights::uniform() {
  std::array<double, 16> w;
  w.fill(1.0 / 16.0);
  return WignerWeights(w);
}

std::size_t WignerWeights::index(int s, int s_prime, int t, int t_prime) {
  auto bit = [](int v) -> std::size_t {
    if (v != 1 && v != -1) throw InputError("outcomes must be +1 or -1");
    return v == -1 ? 1 : 0;
  };
  return (bit(s) << 3) | (bit(s_prime) << 2) | (bit(t) << 1) | bit(t_prime);
}

std::array<int, 4> WignerWeights::outcomes(std::size_t index) {
  auto val = [&](int shift) { return ((index >> shift) & 1U) ? -1 : 1; };
  return {val(3), val(2), val(1), val(0)};
}

WignerWeights WignerWeights::deterministic(int s, int s_prime, int t, int t_prime) {
  std::array<double, 16> w{};
  w[index(s, s_prime, t, t_prime)] = 1.0;
  return WignerWeights(w);
}

WignerWeights WignerWeights::random(Rng& rng) {
  std::array<double, 16> w;
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (double& x : w) x /= total;
  return WignerWeights(w);
}

Correlators wigner_correlators(const WignerWeights& w) {
  Correlators p{0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 16; ++i) {
    const auto [s, sp, t, tp] = WignerWeights::outcomes(i);
    const double x = w.weights()[i];
    p.ab += x * s * t;
    p.ab_prime += x * s * tp;
    p.a_prime_b += x * sp * t;
    p.a_prime_b_prime += x * sp * tp;
  }
  return p;
}

double chsh_combination(const Correlators& p) {
  return std::abs(p.ab - p.ab_prime) + std::abs(p.a_prime_b + p.a_prime_b_prime);
}

double chsh_from_wigner(const WignerWeights& w) { return chsh_combination(wigner_correlators(w)); }

}  // namespace qfound::hv
