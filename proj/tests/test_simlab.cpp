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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfound/error.hpp"
#include "qfound/simlab.hpp"

using namespace qfound;
using namespace qfound::sim;

namespace {

void require_identical(const SimReport& a, const SimReport& b) {
  for (std::size_t k = 0; k < 4; ++k) {
    REQUIRE(a.correlators[k].value == b.correlators[k].value);
    REQUIRE(a.correlators[k].std_error == b.correlators[k].std_error);
    REQUIRE(a.correlators[k].pairs == b.correlators[k].pairs);
  }
  REQUIRE(a.s == b.s);
  REQUIRE(a.s_error == b.s_error);
}

ChshSettings same_axis_settings() {
  const nonlocal::SpinSetting z({0, 0, 1}), x({1, 0, 0});
  return {z, x, z, x};
}

}  // namespace

TEST_SUITE("simlab") {

TEST_CASE("config defaults are valid") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.source == "singlet");
  CHECK(cfg.workers == 1);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.visibility = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.visibility = std::nan("");
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.n_pairs = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.source = "triplet";
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment\n"
      "source = lhv:sphere\n"
      "n_pairs = 1234   # trailing\n"
      "visibility = 0.5\n"
      "seed = 99\n"
      "workers = 3\n"
      "a = 0, 0, 2\n"
      "b_prime = 1 1 0\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.source == "lhv:sphere");
  CHECK(cfg.n_pairs == 1234);
  CHECK(cfg.visibility == 0.5);
  CHECK(cfg.seed == 99);
  CHECK(cfg.workers == 3);
  CHECK(cfg.settings.a.direction() == Vec3{0, 0, 1});
  CHECK(std::abs(cfg.settings.b_prime.direction()[0] - std::sqrt(0.5)) <= 1e-15);
  // Unset keys keep their defaults.
  CHECK(cfg.settings.a_prime.direction() == nonlocal::reference_chsh_settings().a_prime.direction());
}

TEST_CASE("checked-in config loads") {
  const auto cfg = load_config(QFOUND_TEST_DATA_DIR "/reference.cfg");
  CHECK(cfg.seed == 2024);
  CHECK(cfg.workers == 4);
  CHECK(cfg.n_pairs == 400000);
}

TEST_CASE("config parse errors") {
  auto fails_with = [](const std::string& text, const std::string& fragment) {
    std::istringstream in(text);
    try {
      parse_config(in);
    } catch (const InputError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("colour = red\n", "line 1"));
  CHECK(fails_with("\nn_pairs = many\n", "line 2"));
  CHECK(fails_with("n_pairs\n", "key = value"));
  CHECK(fails_with("a = 1, 2\n", "three components"));
  CHECK(fails_with("a = 0, 0, 0\n", "zero vector"));
  CHECK(fails_with("seed = -1\n", "negative"));
  CHECK(fails_with("visibility = 2\n", "visibility"));
  CHECK(fails_with("n_pairs = 10 20\n", "trailing"));
  CHECK_THROWS_AS(load_config("/nonexistent/cfg"), InputError);
}

TEST_CASE("singlet simulation at V = 1 is within 5 sigma of 2 sqrt2") {
  ExperimentConfig cfg;
  cfg.n_pairs = 1'000'000;
  cfg.seed = 17;
  const auto r = simulate_chsh(cfg);
  CHECK(std::abs(r.predicted_s - 2 * std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(r.s - r.predicted_s) <= kSigmaBand * r.s_error);
  CHECK(r.s_error > 0.0);
  CHECK(r.s_error < 0.01);
  for (const auto& c : r.correlators) CHECK(c.pairs == 250000);
}

TEST_CASE("V = 0 gives uncorrelated outcomes") {
  ExperimentConfig cfg;
  cfg.visibility = 0.0;
  cfg.n_pairs = 400000;
  cfg.seed = 5;
  const auto r = simulate_chsh(cfg);
  for (const auto& c : r.correlators) CHECK(std::abs(c.value) <= kSigmaBand * c.std_error);
  CHECK(r.predicted_s == 0.0);
}

TEST_CASE("round-robin schedule distributes remainders to the first pairs") {
  ExperimentConfig cfg;
  cfg.n_pairs = 10;
  const auto r = simulate_chsh(cfg);
  CHECK(r.correlators[0].pairs == 3);
  CHECK(r.correlators[1].pairs == 3);
  CHECK(r.correlators[2].pairs == 2);
  CHECK(r.correlators[3].pairs == 2);
}

TEST_CASE("tiny runs fall back to unit standard errors") {
  ExperimentConfig cfg;
  cfg.n_pairs = 1;
  const auto r = simulate_chsh(cfg);
  CHECK(r.correlators[0].pairs == 1);
  CHECK(r.correlators[0].std_error == 1.0);
  CHECK(r.correlators[1].pairs == 0);
  CHECK(r.correlators[1].value == 0.0);
  CHECK(r.correlators[1].std_error == 1.0);
}

TEST_CASE("perfect anticorrelation on equal settings at V = 1") {
  ExperimentConfig cfg;
  cfg.settings = same_axis_settings();
  cfg.n_pairs = 4000;
  const auto r = simulate_chsh(cfg);
  CHECK(r.correlators[0].value == -1.0);
  CHECK(r.correlators[3].value == -1.0);
  CHECK(r.correlators[0].std_error == 0.0);
}

TEST_CASE("simulation is reproducible and seed-sensitive") {
  ExperimentConfig cfg;
  cfg.n_pairs = 50000;
  cfg.seed = 3;
  require_identical(simulate_chsh(cfg), simulate_chsh(cfg));
  auto other = cfg;
  other.seed = 4;
  CHECK(simulate_chsh(other).s != simulate_chsh(cfg).s);
}

TEST_CASE("parallel singlet simulation matches the serial reference") {
  for (int workers : {1, 4, 7}) {
    ExperimentConfig cfg;
    cfg.n_pairs = 100003;
    cfg.seed = 8;
    cfg.visibility = 0.9;
    cfg.workers = workers;
    const auto ref = simulate_chsh_serial(cfg);
    for (int threads : {1, 2, 3}) {
      omp_set_num_threads(threads);
      require_identical(simulate_chsh(cfg), ref);
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("parallel LHV simulation matches the serial reference") {
  const auto strategy = sphere_sign_strategy();
  const auto settings = nonlocal::reference_chsh_settings();
  for (int workers : {1, 4, 7}) {
    const auto ref = simulate_lhv_serial(strategy, settings, 50001, 12, workers);
    for (int threads : {1, 3}) {
      omp_set_num_threads(threads);
      require_identical(simulate_lhv(strategy, settings, 50001, 12, workers), ref);
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("sphere strategy reproduces the linear correlator") {
  // Exact correlator of this model: -1 + 2 theta / pi.
  const auto settings = nonlocal::reference_chsh_settings();
  const auto r = simulate_lhv(sphere_sign_strategy(), settings, 1'000'000, 21, 2);
  const std::array<std::pair<Vec3, Vec3>, 4> pairs = {
      std::pair{settings.a.direction(), settings.b.direction()},
      {settings.a.direction(), settings.b_prime.direction()},
      {settings.a_prime.direction(), settings.b.direction()},
      {settings.a_prime.direction(), settings.b_prime.direction()}};
  for (std::size_t k = 0; k < 4; ++k) {
    const double theta = std::acos(std::clamp(dot(pairs[k].first, pairs[k].second), -1.0, 1.0));
    const double exact = -1.0 + 2.0 * theta / std::numbers::pi;
    CHECK(std::abs(r.correlators[k].value - exact) <= kSigmaBand * r.correlators[k].std_error);
  }
  CHECK(r.s <= 2.0 + kSigmaBand * r.s_error);
  CHECK(std::isnan(r.predicted_s));
}

TEST_CASE("sphere strategy anticorrelates on equal settings") {
  const auto r = simulate_lhv(sphere_sign_strategy(), same_axis_settings(), 40000, 1);
  CHECK(r.correlators[0].value == -1.0);
  CHECK(r.correlators[3].value == -1.0);
}

TEST_CASE("constant strategy") {
  const auto r = simulate_lhv(constant_strategy(), nonlocal::reference_chsh_settings(), 1000, 1);
  for (const auto& c : r.correlators) CHECK(c.value == -1.0);
  CHECK(r.s == 2.0);
}

TEST_CASE("anticorrelated wrapper gives P(a, a) = -1 exactly") {
  LhvStrategy alice_only = sphere_sign_strategy();
  const auto anti = anticorrelated(alice_only);
  const auto r = simulate_lhv(anti, same_axis_settings(), 20000, 4);
  CHECK(r.correlators[0].value == -1.0);
  CHECK(r.correlators[3].value == -1.0);
  // A hidden-variable vector and setting: bob is minus alice pointwise.
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto lambda = anti.sample(rng);
    const Vec3 d = random_unit_vec3(rng);
    REQUIRE(anti.bob(d, lambda) == -anti.alice(d, lambda));
  }
}

TEST_CASE("invalid strategy outputs are rejected") {
  LhvStrategy bad = constant_strategy();
  bad.id = "zero";
  bad.bob = [](const Vec3&, const HiddenVariable&) { return 0; };
  const auto settings = nonlocal::reference_chsh_settings();
  CHECK_THROWS_AS(simulate_lhv(bad, settings, 100, 1, 3), InputError);
  CHECK_THROWS_AS(simulate_lhv_serial(bad, settings, 100, 1, 3), InputError);
  LhvStrategy incomplete;
  CHECK_THROWS_AS(simulate_lhv(incomplete, settings, 100, 1), InputError);
}

TEST_CASE("strategy lookup") {
  CHECK(strategy_by_id("sphere").id == "sphere");
  CHECK(strategy_by_id("constant").id == "constant");
  CHECK_THROWS_AS(strategy_by_id("telepathy"), InputError);
}

TEST_CASE("simulate dispatches on the source") {
  ExperimentConfig cfg;
  cfg.n_pairs = 1000;
  cfg.source = "lhv:constant";
  const auto r = simulate(cfg);
  CHECK(r.source == "lhv:constant");
  CHECK(r.s == 2.0);
}

TEST_CASE("singlet standard error shrinks as 1/sqrt(n)") {
  ExperimentConfig cfg;
  cfg.seed = 6;
  double previous = 0.0;
  for (std::int64_t n : {10000, 1000000}) {
    cfg.n_pairs = n;
    const auto r = simulate_chsh(cfg);
    REQUIRE(std::abs(r.s - r.predicted_s) <= kSigmaBand * r.s_error);
    if (previous > 0.0) REQUIRE(std::abs(previous / r.s_error - 10.0) <= 1.0);
    previous = r.s_error;
  }
}

TEST_CASE("LHV strategies stay within 5 sigma of the local bound") {
  Rng rng(60);
  for (int t = 0; t < 10; ++t) {
    const ChshSettings s{nonlocal::SpinSetting(random_unit_vec3(rng)),
                         nonlocal::SpinSetting(random_unit_vec3(rng)),
                         nonlocal::SpinSetting(random_unit_vec3(rng)),
                         nonlocal::SpinSetting(random_unit_vec3(rng))};
    for (const auto& strategy : {sphere_sign_strategy(), constant_strategy(), anticorrelated(sphere_sign_strategy())}) {
      const auto r = simulate_lhv(strategy, s, 100000, 70 + t);
      REQUIRE(r.s <= 2.0 + kSigmaBand * r.s_error);
    }
  }
}

}  // TEST_SUITE
