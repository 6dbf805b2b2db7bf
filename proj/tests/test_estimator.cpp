// Copyright 2026 The DCEA Simulator Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "dcea/errors.hpp"
#include "dcea/estimator.hpp"
#include "dcea/graph.hpp"
#include "dcea/leader.hpp"
#include "support.hpp"

using namespace dcea;
using dcea::testing::max_abs;
using dcea::testing::Rng;

namespace {

EllipseLeader formation_leader() {
  EllipseLeader leader({1.2, 1.3}, {0.5, 0.3}, M_PI);
  leader.set_bounds({1.571, 4.935, 15.504});
  return leader;
}

const Betas kBetas{4, 7, 21};

Topology formation() {
  Eigen::VectorXd pin(7);
  pin << 1, 0, 1, 0, 1, 0, 1;
  return Topology::from_edges(7, {{0, 1}, {2, 1}, {0, 3}, {2, 3}, {4, 5}}, pin);
}

std::vector<Vector6d> random_zetas(Rng& rng, int n) {
  std::vector<Vector6d> z(n);
  for (auto& v : z) v = rng.vector(6, -5, 5);
  return z;
}

}  // namespace

TEST_CASE("leader derivatives against finite differences") {
  const EllipseLeader leader = formation_leader();
  const double h = 1e-5;
  for (double t : {0.0, 0.37, 1.9, 12.25}) {
    CHECK((leader.position(t) - Eigen::Vector2d(1.2 + 0.5 * std::sin(M_PI * t),
                                                1.3 + 0.3 * std::cos(M_PI * t))).norm() < 1e-15);
    CHECK(((leader.position(t + h) - leader.position(t - h)) / (2 * h) - leader.velocity(t)).norm() < 1e-8);
    CHECK(((leader.velocity(t + h) - leader.velocity(t - h)) / (2 * h) - leader.acceleration(t)).norm() < 1e-7);
    CHECK(((leader.acceleration(t + h) - leader.acceleration(t - h)) / (2 * h) - leader.jerk(t)).norm() < 1e-6);
  }
  const LeaderBounds sup = leader.analytic_bounds();
  CHECK(sup.velocity == doctest::Approx(0.5 * M_PI));
  CHECK(sup.acceleration == doctest::Approx(0.5 * M_PI * M_PI));
  CHECK(sup.jerk == doctest::Approx(0.5 * M_PI * M_PI * M_PI));
  CHECK(leader.bounds().velocity == 1.571);
}

TEST_CASE("disagreement terms vanish on agreement") {
  const EllipseLeader leader = formation_leader();
  const Vector6d z = leader.stack(0.8);
  CHECK(sigma_pair(z, z).isZero(0));
  CHECK(sigma_leader(z, leader, 0.8).isZero(0));
}

TEST_CASE("estimator rate") {
  const EllipseLeader leader = formation_leader();
  const Topology topo = formation();
  const double t = 0.6;

  SUBCASE("zero when every node matches the leader") {
    const std::vector<Vector6d> z(7, leader.stack(t));
    for (int i = 0; i < 7; ++i) {
      CHECK(estimator_rate(i, z, topo, &leader, t, EstimatorMode::kPinned, kBetas).isZero(0));
    }
  }
  SUBCASE("positive argument saturates at the negated gains") {
    std::vector<Vector6d> z(7, leader.stack(t));
    z[0] += Vector6d::Constant(0.3);
    Vector6d expected;
    expected << -4, -4, -7, -7, -21, -21;
    CHECK(estimator_rate(0, z, topo, &leader, t, EstimatorMode::kPinned, kBetas) == expected);
  }
  SUBCASE("brute-force argument and the rate bound") {
    Rng rng(43);
    for (int n = 0; n < 200; ++n) {
      const std::vector<Vector6d> z = random_zetas(rng, 7);
      for (int i = 0; i < 7; ++i) {
        Vector6d arg = topo.pinning()[i] * (z[i] - leader.stack(t));
        for (int j = 0; j < 7; ++j) arg += topo.weight(i, j) * (z[i] - z[j]);
        CHECK((estimator_argument(i, z, topo, &leader, t, EstimatorMode::kPinned) - arg)
                  .cwiseAbs().maxCoeff() < 1e-12);
        const Vector6d rate = estimator_rate(i, z, topo, &leader, t, EstimatorMode::kPinned, kBetas);
        CHECK(rate.cwiseAbs().maxCoeff() <= kBetas.max());
      }
    }
  }
  SUBCASE("leaderless mode ignores pinning") {
    Rng rng(47);
    const std::vector<Vector6d> z = random_zetas(rng, 7);
    const Vector6d arg = estimator_argument(0, z, topo, &leader, t, EstimatorMode::kLeaderless);
    CHECK(arg.isZero(0));  // node 1 has no in-neighbours
  }
  SUBCASE("boundary layer replaces sgn by tanh") {
    std::vector<Vector6d> z(7, leader.stack(t));
    z[0][0] += 0.005;
    const Vector6d r = estimator_rate(0, z, topo, &leader, t, EstimatorMode::kPinned, kBetas, 0.01);
    CHECK(r[0] == doctest::Approx(-4 * std::tanh(0.5)).epsilon(1e-9));
    CHECK(std::abs(r[1]) < 1e-12);
  }
  SUBCASE("rate depends only on in-neighbours") {
    Rng rng(53);
    std::vector<Vector6d> z = random_zetas(rng, 7);
    const Vector6d before = estimator_rate(1, z, topo, &leader, t, EstimatorMode::kPinned, kBetas);
    z[4] = rng.vector(6, -5, 5);
    z[6] = rng.vector(6, -5, 5);
    CHECK(estimator_rate(1, z, topo, &leader, t, EstimatorMode::kPinned, kBetas) == before);
  }
}

TEST_CASE("settle time bound") {
  const EllipseLeader leader = formation_leader();
  SUBCASE("zero initial error settles immediately") {
    const std::vector<Vector6d> z(7, leader.stack(0.0));
    CHECK(settle_time_bound(z, leader, 0.0, kBetas) == 0.0);
  }
  SUBCASE("initial errors of five") {
    std::vector<Vector6d> z(7, leader.stack(0.0));
    z[2][0] += 5;
    z[4][3] -= 5;
    z[6][5] += 5;
    const double expected = std::max({5 / (4 - 1.571), 5 / (7 - 4.935), 5 / (21 - 15.504)});
    CHECK(settle_time_bound(z, leader, 0.0, kBetas) == doctest::Approx(expected));
    CHECK(settle_time_bound(z, leader, 0.0, kBetas) == doctest::Approx(2.421).epsilon(1e-3));
  }
  SUBCASE("gain equal to the leader bound has no margin") {
    const std::vector<Vector6d> z(7, leader.stack(0.0));
    CHECK_THROWS_AS(settle_time_bound(z, leader, 0.0, Betas{1.571, 7, 21}), NonpositiveMargin);
  }
}
