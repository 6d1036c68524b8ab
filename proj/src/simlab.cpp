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

#include "qfound/simlab.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qfound/error.hpp"

namespace qfound::sim {
namespace {

struct Tally {
  std::array<std::int64_t, 4> pairs{};
  std::array<std::int64_t, 4> agree{};  // x y = +1

  void merge(const Tally& o) {
    for (int k = 0; k < 4; ++k) {
      pairs[k] += o.pairs[k];
      agree[k] += o.agree[k];
    }
  }
};

struct Shard {
  std::int64_t begin, end;
};

std::vector<Shard> make_shards(std::int64_t n, int workers) {
  std::vector<Shard> out(static_cast<std::size_t>(workers));
  for (int k = 0; k < workers; ++k) out[k] = {n * k / workers, n * (k + 1) / workers};
  return out;
}

std::array<std::pair<Vec3, Vec3>, 4> setting_pairs(const ChshSettings& s) {
  return {{{s.a.direction(), s.b.direction()},
           {s.a.direction(), s.b_prime.direction()},
           {s.a_prime.direction(), s.b.direction()},
           {s.a_prime.direction(), s.b_prime.direction()}}};
}

Tally singlet_shard(const std::array<double, 4>& correlation, const Shard& shard, Rng rng) {
  Tally t;
  for (std::int64_t i = shard.begin; i < shard.end; ++i) {
    const int k = static_cast<int>(i % 4);
    const double e = correlation[k];
    const double u = rng.uniform();
    // CDF over (+,+), (+,-), (-,+), (-,-).
    const double same = 0.25 * (1.0 + e);
    const double diff = 0.25 * (1.0 - e);
    const bool agree = u < same || u >= same + 2.0 * diff;
    ++t.pairs[k];
    t.agree[k] += agree ? 1 : 0;
  }
  return t;
}

Tally lhv_shard(const LhvStrategy& strategy, const std::array<std::pair<Vec3, Vec3>, 4>& pairs,
                const Shard& shard, Rng rng, bool& invalid) {
  Tally t;
  for (std::int64_t i = shard.begin; i < shard.end; ++i) {
    const int k = static_cast<int>(i % 4);
    const HiddenVariable lambda = strategy.sample(rng);
    const int x = strategy.alice(pairs[k].first, lambda);
    const int y = strategy.bob(pairs[k].second, lambda);
    if ((x != 1 && x != -1) || (y != 1 && y != -1)) {
      invalid = true;
      return t;
    }
    ++t.pairs[k];
    t.agree[k] += (x * y == 1) ? 1 : 0;
  }
  return t;
}

SimReport finish(const Tally& t, std::string source, std::int64_t n, std::uint64_t seed,
                 int workers, double visibility, double predicted) {
  SimReport r;
  r.source = std::move(source);
  double var = 0.0;
  for (int k = 0; k < 4; ++k) {
    auto& c = r.correlators[k];
    c.pairs = t.pairs[k];
    if (c.pairs == 0) continue;  // keeps the defaults: value 0, std_error 1
    const double nk = static_cast<double>(c.pairs);
    c.value = (2.0 * static_cast<double>(t.agree[k]) - nk) / nk;
    c.std_error = c.pairs >= 2 ? std::sqrt(std::max(0.0, 1.0 - c.value * c.value) / (nk - 1.0))
                               : 1.0;
    var += c.std_error * c.std_error;
  }
  const auto& c = r.correlators;
  r.s = std::abs(c[0].value - c[1].value) + std::abs(c[2].value + c[3].value);
  r.s_error = std::sqrt(var);
  r.n_pairs = n;
  r.seed = seed;
  r.workers = workers;
  r.visibility = visibility;
  r.predicted_s = predicted;
  return r;
}

std::array<double, 4> singlet_correlations(const ExperimentConfig& config) {
  std::array<double, 4> out;
  const auto pairs = setting_pairs(config.settings);
  for (int k = 0; k < 4; ++k) out[k] = -config.visibility * dot(pairs[k].first, pairs[k].second);
  return out;
}

double predicted_s(const ExperimentConfig& config) {
  return config.visibility * nonlocal::chsh_value(nonlocal::singlet_state(), config.settings);
}

void check_lhv_args(const LhvStrategy& s, std::int64_t n, int workers) {
  if (!s.sample || !s.alice || !s.bob) throw InputError("LHV strategy is incomplete");
  if (n < 1) throw InputError("n_pairs must be >= 1");
  if (workers < 1) throw InputError("worker count must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// Strategies

LhvStrategy sphere_sign_strategy() {
  return {"sphere",
          [](Rng& rng) {
            const Vec3 v = random_unit_vec3(rng);
            return HiddenVariable{v[0], v[1], v[2], 0.0};
          },
          [](const Vec3& a, const HiddenVariable& l) {
            return a[0] * l[0] + a[1] * l[1] + a[2] * l[2] < 0.0 ? -1 : 1;
          },
          [](const Vec3& b, const HiddenVariable& l) {
            return b[0] * l[0] + b[1] * l[1] + b[2] * l[2] < 0.0 ? 1 : -1;
          }};
}

LhvStrategy constant_strategy(int alice_value, int bob_value) {
  return {"constant", [](Rng&) { return HiddenVariable{}; },
          [alice_value](const Vec3&, const HiddenVariable&) { return alice_value; },
          [bob_value](const Vec3&, const HiddenVariable&) { return bob_value; }};
}

LhvStrategy anticorrelated(const LhvStrategy& base) {
  auto alice = base.alice;
  return {base.id + "-anticorrelated", base.sample, base.alice,
          [alice](const Vec3& b, const HiddenVariable& l) { return -alice(b, l); }};
}

LhvStrategy strategy_by_id(const std::string& id) {
  if (id == "sphere") return sphere_sign_strategy();
  if (id == "constant") return constant_strategy();
  throw InputError("unknown LHV strategy '" + id + "' (expected sphere or constant)");
}

// ---------------------------------------------------------------------------
// Simulation

void ExperimentConfig::validate() const {
  if (n_pairs < 1) throw InputError("n_pairs must be >= 1");
  if (!(visibility >= 0.0 && visibility <= 1.0)) throw InputError("visibility must lie in [0, 1]");
  if (workers < 1) throw InputError("workers must be >= 1");
  if (source != "singlet" && source.rfind("lhv:", 0) != 0)
    throw InputError("source must be 'singlet' or 'lhv:<strategy>'");
}

SimReport simulate_chsh_serial(const ExperimentConfig& config) {
  config.validate();
  const auto corr = singlet_correlations(config);
  const auto shards = make_shards(config.n_pairs, config.workers);
  Tally total;
  for (std::size_t k = 0; k < shards.size(); ++k)
    total.merge(singlet_shard(corr, shards[k], Rng::stream(config.seed, k)));
  return finish(total, "singlet", config.n_pairs, config.seed, config.workers, config.visibility,
                predicted_s(config));
}

SimReport simulate_chsh(const ExperimentConfig& config) {
  config.validate();
  const auto corr = singlet_correlations(config);
  const auto shards = make_shards(config.n_pairs, config.workers);
  std::vector<Tally> parts(shards.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < config.workers; ++k)
    parts[k] = singlet_shard(corr, shards[k], Rng::stream(config.seed, static_cast<std::uint64_t>(k)));
  Tally total;
  for (const auto& p : parts) total.merge(p);
  return finish(total, "singlet", config.n_pairs, config.seed, config.workers, config.visibility,
                predicted_s(config));
}

SimReport simulate_lhv_serial(const LhvStrategy& strategy, const ChshSettings& settings,
                              std::int64_t n_pairs, std::uint64_t seed, int workers) {
  check_lhv_args(strategy, n_pairs, workers);
  const auto pairs = setting_pairs(settings);
  const auto shards = make_shards(n_pairs, workers);
  Tally total;
  bool invalid = false;
  for (std::size_t k = 0; k < shards.size() && !invalid; ++k)
    total.merge(lhv_shard(strategy, pairs, shards[k], Rng::stream(seed, k), invalid));
  if (invalid) throw InputError("LHV strategy '" + strategy.id + "' returned a value other than +-1");
  return finish(total, "lhv:" + strategy.id, n_pairs, seed, workers, 1.0,
                std::numeric_limits<double>::quiet_NaN());
}

SimReport simulate_lhv(const LhvStrategy& strategy, const ChshSettings& settings,
                       std::int64_t n_pairs, std::uint64_t seed, int workers) {
  check_lhv_args(strategy, n_pairs, workers);
  const auto pairs = setting_pairs(settings);
  const auto shards = make_shards(n_pairs, workers);
  std::vector<Tally> parts(shards.size());
  std::vector<char> invalid(shards.size(), 0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < workers; ++k) {
    bool bad = false;
    parts[k] = lhv_shard(strategy, pairs, shards[k], Rng::stream(seed, static_cast<std::uint64_t>(k)), bad);
    invalid[k] = bad ? 1 : 0;
  }
  Tally total;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (invalid[k]) throw InputError("LHV strategy '" + strategy.id + "' returned a value other than +-1");
    total.merge(parts[k]);
  }
  return finish(total, "lhv:" + strategy.id, n_pairs, seed, workers, 1.0,
                std::numeric_limits<double>::quiet_NaN());
}

SimReport simulate(const ExperimentConfig& config) {
  config.validate();
  if (config.source == "singlet") return simulate_chsh(config);
  return simulate_lhv(strategy_by_id(config.source.substr(4)), config.settings, config.n_pairs,
                      config.seed, config.workers);
}

}  // namespace qfound::sim
