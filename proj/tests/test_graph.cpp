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

#include <vector>

#include "dcea/errors.hpp"
#include "dcea/graph.hpp"
#include "support.hpp"

using namespace dcea;
using dcea::testing::max_abs;

namespace {

// Edges 1->2, 3->2, 1->4, 3->4, 5->6 (1-based, sender first).
Topology formation(const Eigen::VectorXd& pinning) {
  return Topology::from_edges(7, {{0, 1}, {2, 1}, {0, 3}, {2, 3}, {4, 5}}, pinning);
}

Eigen::VectorXd pins(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("formation Laplacian entry for entry") {
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(7, 7);
  expected.row(1) << -1, 2, -1, 0, 0, 0, 0;
  expected.row(3) << -1, 0, -1, 2, 0, 0, 0;
  expected.row(5) << 0, 0, 0, 0, -1, 1, 0;
  const Eigen::MatrixXd l = laplacian(formation(pins({1, 0, 1, 0, 1, 0, 1})));
  CHECK(max_abs(l - expected) == 0.0);
}

TEST_CASE("Laplacian of an empty graph and row sums") {
  const Topology empty = Topology::from_edges(4, {}, Eigen::VectorXd::Zero(4));
  CHECK(max_abs(laplacian(empty)) == 0.0);
  const Topology weighted = Topology::from_edges(
      4, {{0, 1, 0.5}, {1, 2, 2.0}, {3, 2, 1.5}, {2, 0, 3.0}}, Eigen::VectorXd::Zero(4));
  CHECK(max_abs(laplacian(weighted) * Eigen::VectorXd::Ones(4)) < 1e-15);
  CHECK(weighted.weight(2, 3) == 1.5);
  CHECK(weighted.weight(3, 2) == 0.0);
}

TEST_CASE("leader reachability") {
  CHECK(leader_reachable(formation(pins({1, 0, 1, 0, 1, 0, 1}))));
  CHECK_FALSE(leader_reachable(formation(Eigen::VectorXd::Zero(7))));
  CHECK(leader_reachable(formation(Eigen::VectorXd::Ones(7))));
  const std::vector<bool> reached = leader_reached_nodes(formation(pins({1, 0, 1, 0, 0, 0, 0})));
  CHECK(reached == std::vector<bool>{true, true, true, true, false, false, false});
}

TEST_CASE("spanning tree existence") {
  CHECK(spanning_tree_exists(Topology::from_edges(3, {{0, 1}, {1, 2}}, Eigen::VectorXd::Zero(3))));
  CHECK_FALSE(spanning_tree_exists(Topology::from_edges(2, {}, Eigen::VectorXd::Zero(2))));
  CHECK_FALSE(spanning_tree_exists(formation(Eigen::VectorXd::Zero(7))));
  CHECK(spanning_tree_exists(Topology::from_edges(1, {}, Eigen::VectorXd::Zero(1))));
}

TEST_CASE("malformed topologies are rejected") {
  CHECK_THROWS_AS(Topology::from_edges(3, {{0, 3}}, Eigen::VectorXd::Zero(3)), Error);
  CHECK_THROWS_AS(Topology::from_edges(3, {{1, 1}}, Eigen::VectorXd::Zero(3)), Error);
  CHECK_THROWS_AS(Topology::from_edges(3, {{0, 1, -1.0}}, Eigen::VectorXd::Zero(3)), Error);
  CHECK_THROWS_AS(Topology(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(2)), Error);
}

TEST_CASE("edge list round trip") {
  const Topology t = formation(pins({1, 0, 1, 0, 1, 0, 1}));
  CHECK(Topology::from_edges(7, t.edges(), t.pinning()) == t);
}

TEST_CASE("schedule segments are right-continuous") {
  const Topology a = formation(Eigen::VectorXd::Ones(7));
  const Topology b = formation(Eigen::VectorXd::Zero(7));
  const TopologySchedule s({{0.0, a}, {2.0, b}, {4.0, a}});
  CHECK(s.switching());
  CHECK(s.segment_index(0.0) == 0);
  CHECK(s.segment_index(1.999) == 0);
  CHECK(s.segment_index(2.0) == 1);
  CHECK(s.segment_index(3.5) == 1);
  CHECK(s.segment_index(4.0) == 2);
  CHECK(s.segment_index(100.0) == 2);
  CHECK(s.at(2.0) == b);
  CHECK_FALSE(TopologySchedule(a).switching());
}
