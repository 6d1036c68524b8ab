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

#include "qfound/qmath.hpp"
#include "qfound/rng.hpp"

namespace qfound::hv {

/// sgn with sgn(0) = +1.
inline double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// Dispersion-free state (psi, lambda) of a spin-1/2 particle, lambda in [-1/2, 1/2].
class BellHvState {
 public:
  /// Throws InputError unless psi is 2-dimensional and lambda is in range.
  BellHvState(StateVector psi, double lambda);

  const StateVector& psi() const { return psi_; }
  double lambda() const { return lambda_; }

 private:
  StateVector psi_;
  double lambda_;
};

/**
 * Value assigned to M(alpha, beta) = alpha + beta.sigma in the state (psi, lambda):
 *
 *   alpha + |beta| sgn(m) sgn(lambda |beta| + |m| / 2),   m = <psi|beta.sigma|psi>.
 *
 * Always one of the eigenvalues alpha +- |beta|. beta = 0 gives alpha.
 */
double bell_hv_value(double alpha, const Vec3& beta, const BellHvState& state);

/// Average of bell_hv_value over uniform lambda, integrated in closed form.
double bell_hv_average_exact(double alpha, const Vec3& beta, const StateVector& psi);

/// Minimum Monte Carlo sample count.
inline constexpr std::int64_t kMinMcSamples = 100;

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double exact = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  /// |estimate - exact| <= 5 std_error (or <= kTolEq when std_error is 0).
  bool consistent = false;
};

/**
 * Monte Carlo average of bell_hv_value over n uniform lambda draws.
 *
 * Samples are split into `workers` contiguous shards; shard k draws from
 * Rng::stream(seed, k). The result depends on (seed, n, workers) only, not
 * on the number of OpenMP threads. Throws InputError for n < kMinMcSamples
 * or workers < 1.
 */
McEstimate bell_hv_average_mc(double alpha, const Vec3& beta, const StateVector& psi,
                              std::int64_t n, std::uint64_t seed, int workers = 1);

/// Single-threaded reference for bell_hv_average_mc, same shard layout.
McEstimate bell_hv_average_mc_serial(double alpha, const Vec3& beta, const StateVector& psi,
                                     std::int64_t n, std::uint64_t seed, int workers = 1);

/**
 * Nonnegative weights w(s, s', t, t') over the 16 preassigned outcome tuples.
 * Index bits, most significant first: s, s', t, t' with bit set for -1.
 */
class WignerWeights {
 public:
  /// Throws InputError on a negative weight or a sum differing from 1 by more than kTolEq.
  explicit WignerWeights(const std::array<double, 16>& w);

  static WignerWeights uniform();
  static WignerWeights deterministic(int s, int s_prime, int t, int t_prime);
  /// Uniform on the probability simplex.
  static WignerWeights random(Rng& rng);

  static std::size_t index(int s, int s_prime, int t, int t_prime);
  /// The (s, s', t, t') tuple of an index.
  static std::array<int, 4> outcomes(std::size_t index);

  const std::array<double, 16>& weights() const { return w_; }
  double operator()(int s, int s_prime, int t, int t_prime) const {
    return w_[index(s, s_prime, t, t_prime)];
  }

 private:
  std::array<double, 16> w_;
};

struct Correlators {
  double ab, ab_prime, a_prime_b, a_prime_b_prime;
};

/// Weighted parity sums of st, st', s't, s't'.
Correlators wigner_correlators(const WignerWeights& w);

/// S = |P(a,b) - P(a,b')| + |P(a',b) + P(a',b')|.
double chsh_combination(const Correlators& p);
double chsh_from_wigner(const WignerWeights& w);

}  // namespace qfound::hv
