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
#include "qfound/vn_ensemble.hpp"

using namespace qfound;
using namespace qfound::vn;

TEST_SUITE("vn_ensemble") {

TEST_CASE("basis observables are Hermitian and number d^2") {
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto basis = basis_observables(d);
    CHECK(basis.size() == d * d);
    for (const auto& od : basis.off_diagonal) {
      CHECK(od.n > od.m);
      CHECK(od.v.matrix().is_hermitian());
      CHECK(od.w.matrix().is_hermitian());
    }
  }
  CHECK_THROWS_AS(basis_observables(0), InputError);
}

TEST_CASE("reconstruction recovers random density operators") {
  Rng rng(101);
  for (std::size_t d : {2, 3, 4, 6}) {
    for (int t = 0; t < 25; ++t) {
      const auto rho = random_density(d, rng);
      const auto rebuilt = reconstruct_density(oracle_from_density(rho));
      REQUIRE(rebuilt.matrix().max_abs_diff(rho.matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("reconstruction of pure and maximally mixed states") {
  const auto pure = DensityOperator::pure(StateVector::normalize({1.0, Complex(0, 1), 0.0}));
  const auto rp = reconstruct_density(oracle_from_density(pure));
  CHECK(rp.matrix().max_abs_diff(pure.matrix()) <= 1e-12);
  CHECK(homogeneity_check(rp).homogeneous);
  CHECK(homogeneity_check(rp).rank == 1);

  const auto mixed = DensityOperator::maximally_mixed(3);
  const auto h = homogeneity_check(reconstruct_density(oracle_from_density(mixed)));
  CHECK(!h.homogeneous);
  CHECK(h.rank == 3);
  CHECK(std::abs(h.purity - 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("oracle with <I> != 1 is malformed") {
  ExpectationOracle scaled_oracle{
      2, [](const Observable& a) { return 2.0 * expectation(DensityOperator::maximally_mixed(2), a); },
      false};
  CHECK_THROWS_AS(reconstruct_density(scaled_oracle), MalformedEnsembleError);
}

TEST_CASE("a linear but non-positive functional is malformed") {
  // Linear, normalized, but <|1><1|> = -0.5.
  const ComplexMatrix w{{1.5, 0.0}, {0.0, -0.5}};
  ExpectationOracle bad{2,
                        [w](const Observable& a) { return (w * a.matrix()).trace().real(); },
                        false};
  CHECK_THROWS_AS(reconstruct_density(bad), MalformedEnsembleError);
  ExpectationOracle empty{2, {}, false};
  CHECK_THROWS_AS(reconstruct_density(empty), InputError);
}

TEST_CASE("dispersion scan endpoints and continuity") {
  Rng rng(7);
  const auto rho = random_density(3, rng);
  const auto phi1 = StateVector::basis(3, 0), phi2 = StateVector::basis(3, 2);
  const int steps = 1000;
  const auto scan = dispersion_scan(rho, phi1, phi2, steps);
  REQUIRE(scan.size() == static_cast<std::size_t>(steps));
  CHECK(std::abs(scan.front().value - rho.matrix()(0, 0).real()) <= 1e-10);
  CHECK(std::abs(scan.back().value - rho.matrix()(2, 2).real()) <= 1e-10);
  CHECK(std::abs(scan.back().theta - std::numbers::pi / 2) <= 1e-15);
  for (std::size_t k = 1; k < scan.size(); ++k)
    REQUIRE(std::abs(scan[k].value - scan[k - 1].value) <= 2.0 * std::numbers::pi / steps);
}

TEST_CASE("dispersion scan rejects bad inputs") {
  const auto rho = DensityOperator::maximally_mixed(2);
  const auto e0 = StateVector::basis(2, 0), e1 = StateVector::basis(2, 1);
  CHECK_THROWS_AS(dispersion_scan(rho, e0, e1, 1), InputError);
  CHECK_THROWS_AS(dispersion_scan(rho, e0, e0, 10), InputError);
  CHECK_THROWS_AS(dispersion_scan(rho, StateVector::basis(3, 0), StateVector::basis(3, 1), 10),
                  DimensionError);
}

TEST_CASE("dispersion witness exists for every state") {
  Rng rng(13);
  for (std::size_t d : {2, 3, 4}) {
    for (int t = 0; t < 30; ++t) {
      const auto rho = random_density(d, rng);
      const auto w = dispersion_free_witness(rho);
      REQUIRE(w.value > kWitnessMargin);
      REQUIRE(w.value < 1.0 - kWitnessMargin);
      // <P^2> - <P>^2 = v - v^2 for a projector.
      REQUIRE(w.value - w.value * w.value > 0.0);
    }
  }
  // Pure basis states hit the pi/4 candidate at exactly 1/2.
  const auto w = dispersion_free_witness(DensityOperator::pure(StateVector::basis(3, 1)));
  CHECK(std::abs(w.value - 0.5) <= 1e-12);
  CHECK(!w.from_fallback_scan);
  // Maximally mixed: every projector has <P> = 1/d.
  const auto wm = dispersion_free_witness(DensityOperator::maximally_mixed(4));
  CHECK(std::abs(wm.value - 0.25) <= 1e-12);
}

TEST_CASE("Jauch-Piron cross intersections vanish") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto r = jauch_piron_contradiction(random_unit_vec3(rng), random_unit_vec3(rng));
    REQUIRE(r.a_family_resolves_identity);
    REQUIRE(r.b_family_resolves_identity);
    REQUIRE(r.all_cross_intersections_zero);
  }
  const auto r = jauch_piron_contradiction({0, 0, 1}, {1, 0, 0});
  CHECK(r.cross_ranks == std::array<int, 4>{0, 0, 0, 0});
  CHECK(!r.conclusion.empty());
}

TEST_CASE("Jauch-Piron rejects degenerate directions") {
  CHECK_THROWS_AS(jauch_piron_contradiction({0, 0, 1}, {0, 0, 1}), InputError);
  CHECK_THROWS_AS(jauch_piron_contradiction({0, 0, 1}, {0, 0, -1}), InputError);
  CHECK_THROWS_AS(jauch_piron_contradiction({0, 0, 2}, {1, 0, 0}), InputError);
}

TEST_CASE("worked reconstruction examples") {
  const auto r0 = reconstruct_density(oracle_from_density(DensityOperator::pure(StateVector::basis(2, 0))));
  CHECK(r0.matrix().approx_equal(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, 1e-15));
  const auto rm = reconstruct_density(oracle_from_density(DensityOperator::maximally_mixed(2)));
  CHECK(rm.matrix().approx_equal(ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}, 1e-15));
}

TEST_CASE("reconstructed operators satisfy the density invariants") {
  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    const auto rho = reconstruct_density(oracle_from_density(random_density(4, rng)));
    REQUIRE(rho.matrix().is_hermitian(1e-10));
    REQUIRE(std::abs(rho.matrix().trace() - 1.0) <= 1e-10);
    REQUIRE(eigvalsh(rho.matrix()).back() >= -1e-9);
  }
}

TEST_CASE("scan of a pure endpoint state is cos^2") {
  const auto phi1 = StateVector::basis(2, 0), phi2 = StateVector::basis(2, 1);
  for (const auto& p : dispersion_scan(DensityOperator::pure(phi1), phi1, phi2, 101))
    REQUIRE(std::abs(p.value - std::cos(p.theta) * std::cos(p.theta)) <= 1e-12);
  for (const auto& p : dispersion_scan(DensityOperator::maximally_mixed(2), phi1, phi2, 101))
    REQUIRE(std::abs(p.value - 0.5) <= 1e-12);
}

TEST_CASE("witness for |0><0| in two dimensions") {
  const auto w = dispersion_free_witness(DensityOperator::pure(StateVector::basis(2, 0)));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(w.phi[0]) - h) <= 1e-12);
  CHECK(std::abs(std::abs(w.phi[1]) - h) <= 1e-12);
  CHECK(std::abs(w.value - 0.5) <= 1e-12);
}

TEST_CASE("random-search oracle agrees that witnesses exist") {
  // Independent of the eigenvector construction: among 1000 random phi some
  // have <phi|rho|phi> inside the margin.
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_density(3, rng);
    const Observable r(rho.matrix());
    int inside = 0;
    for (int k = 0; k < 1000; ++k) {
      const double v = expectation(random_state(3, rng), r);
      inside += (v > kWitnessMargin && v < 1 - kWitnessMargin) ? 1 : 0;
    }
    REQUIRE(inside > 0);
    REQUIRE(dispersion_free_witness(rho).value > kWitnessMargin);
  }
}

TEST_CASE("homogeneity is equivalent to unit purity") {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const bool pure = t % 2 == 0;
    const auto rho = pure ? DensityOperator::pure(random_state(3, rng)) : random_density(3, rng);
    const auto h = homogeneity_check(rho);
    REQUIRE(h.homogeneous == (std::abs(h.purity - 1.0) <= 1e-10));
    REQUIRE(h.homogeneous == pure);
  }
  const std::vector<StateVector> basis = {StateVector::basis(2, 0), StateVector::basis(2, 1)};
  const std::vector<double> weights = {0.9, 0.1};
  const auto h = homogeneity_check(DensityOperator::mixture(weights, basis));
  CHECK(!h.homogeneous);
  CHECK(std::abs(h.purity - 0.82) <= 1e-12);
  CHECK(h.rank == 2);
}

TEST_CASE("nearly parallel directions still give empty intersections") {
  const auto r = jauch_piron_contradiction({0, 0, 1}, {std::sin(0.01), 0, std::cos(0.01)});
  CHECK(r.all_cross_intersections_zero);
}

}  // TEST_SUITE
