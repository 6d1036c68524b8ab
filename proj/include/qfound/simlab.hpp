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
#include <functional>
#include <iosfwd>
#include <string>

#include "qfound/nonlocality.hpp"
#include "qfound/rng.hpp"

namespace qfound::sim {

using nonlocal::ChshSettings;

/// Hidden variable of an LHV strategy; strategies use as many slots as they need.
using HiddenVariable = std::array<double, 4>;

/**
 * Local hidden-variable strategy. Alice's response sees only her setting and
 * lambda, Bob's only his; both must return +1 or -1. All three callables must
 * be safe to call concurrently.
 */
struct LhvStrategy {
  std::string id;
  std::function<HiddenVariable(Rng&)> sample;
  std::function<int(const Vec3&, const HiddenVariable&)> alice;
  std::function<int(const Vec3&, const HiddenVariable&)> bob;
};

/// lambda uniform on the sphere, A = sgn(a.lambda), B = -sgn(b.lambda).
LhvStrategy sphere_sign_strategy();
/// A = alice_value, B = bob_value regardless of settings.
LhvStrategy constant_strategy(int alice_value = 1, int bob_value = -1);
/// Same sampler and Alice response as `base`, with B(b, lambda) = -A(b, lambda).
LhvStrategy anticorrelated(const LhvStrategy& base);
/// "sphere" or "constant"; throws InputError otherwise.
LhvStrategy strategy_by_id(const std::string& id);

struct ExperimentConfig {
  ChshSettings settings = nonlocal::reference_chsh_settings();
  std::int64_t n_pairs = 1'000'000;
  double visibility = 1.0;
  std::uint64_t seed = 0;
  /// "singlet" or "lhv:<strategy id>".
  std::string source = "singlet";
  int workers = 1;

  /// Throws InputError if any field is out of range.
  void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment. Keys: source, n_pairs,
/// visibility, seed, workers, a, a_prime, b, b_prime (three components each,
/// normalized on load). Missing keys keep their defaults.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct CorrelatorEstimate {
  double value = 0.0;
  double std_error = 1.0;
  std::int64_t pairs = 0;
};

/// Setting pairs in round-robin order: (a,b), (a,b'), (a',b), (a',b').
inline constexpr std::array<const char*, 4> kSettingPairNames = {"ab", "ab'", "a'b", "a'b'"};

struct SimReport {
  std::string source;
  std::array<CorrelatorEstimate, 4> correlators;
  double s = 0.0;
  double s_error = 0.0;
  std::int64_t n_pairs = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  double visibility = 1.0;
  /// V * S_QM(settings) for the singlet source; NaN for LHV sources.
  double predicted_s = 0.0;
};

/// Number of standard errors allowed in every statistical verdict.
inline constexpr double kSigmaBand = 5.0;

/**
 * Singlet source with visibility V: each pair takes the next setting pair in
 * round-robin order and draws (x, y) by inverse CDF from
 * P(x, y) = (1 + x y V (-a.b)) / 4, one 64-bit draw per pair.
 *
 * Pairs are split into `workers` contiguous shards, shard k seeded by
 * Rng::stream(seed, k). Tallies are integers, so the report depends on
 * (config, workers) only, never on OpenMP scheduling.
 */
SimReport simulate_chsh(const ExperimentConfig& config);
/// Single-threaded reference with the same shard layout.
SimReport simulate_chsh_serial(const ExperimentConfig& config);

/// Draws lambda once per pair and evaluates A(a, lambda), B(b, lambda).
/// Throws InputError if a response is not +-1.
SimReport simulate_lhv(const LhvStrategy& strategy, const ChshSettings& settings,
                       std::int64_t n_pairs, std::uint64_t seed, int workers = 1);
SimReport simulate_lhv_serial(const LhvStrategy& strategy, const ChshSettings& settings,
                              std::int64_t n_pairs, std::uint64_t seed, int workers = 1);

/// Dispatches on config.source.
SimReport simulate(const ExperimentConfig& config);

}  // namespace qfound::sim
