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
#include "dcea/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcea/errors.hpp"

namespace dcea {

namespace {

// Nodes reachable from the seeds, following edges sender -> receiver.
std::vector<bool> reach_from(const Eigen::MatrixXd& adjacency,
                             std::vector<int> frontier) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<bool> seen(n, false);
  for (int s : frontier) seen[s] = true;
  while (!frontier.empty()) {
    const int sender = frontier.back();
    frontier.pop_back();
    for (int receiver = 0; receiver < n; ++receiver) {
      if (!seen[receiver] && adjacency(receiver, sender) > 0) {
        seen[receiver] = true;
        frontier.push_back(receiver);
      }
    }
  }
  return seen;
}

bool all_of(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace

Topology::Topology(Eigen::MatrixXd adjacency, Eigen::VectorXd pinning)
    : adjacency_(std::move(adjacency)), pinning_(std::move(pinning)) {
  const auto n = adjacency_.rows();
  if (n == 0 || adjacency_.cols() != n) {
    throw InvalidModel("adjacency matrix must be square and nonempty");
  }
  if (pinning_.size() != n) {
    throw InvalidModel("pinning vector length " +
                       std::to_string(pinning_.size()) + " does not match " +
                       std::to_string(n) + " nodes");
  }
  if (!adjacency_.allFinite() || (adjacency_.array() < 0).any()) {
    throw InvalidModel("adjacency weights must be finite and nonnegative");
  }
  if (!pinning_.allFinite() || (pinning_.array() < 0).any()) {
    throw InvalidModel("pinning weights must be finite and nonnegative");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency_(i, i) != 0) {
      throw InvalidModel("self loop on node " + std::to_string(i + 1));
    }
  }
}

Topology Topology::from_edges(int nodes, const std::vector<Edge>& edges,
                              Eigen::VectorXd pinning) {
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(nodes, nodes);
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= nodes || e.to < 0 || e.to >= nodes) {
      throw InvalidModel("edge " + std::to_string(e.from + 1) + "->" +
                         std::to_string(e.to + 1) + " references a missing node");
    }
    adjacency(e.to, e.from) = e.weight;
  }
  return Topology(std::move(adjacency), std::move(pinning));
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (adjacency_(i, j) > 0) out.push_back({j, i, adjacency_(i, j)});
    }
  }
  return out;
}

Eigen::MatrixXd laplacian(const Topology& topology) {
  const Eigen::MatrixXd& a = topology.adjacency();
  Eigen::MatrixXd l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

std::vector<bool> leader_reached_nodes(const Topology& topology) {
  std::vector<int> pinned;
  for (int i = 0; i < topology.size(); ++i) {
    if (topology.pinning()[i] > 0) pinned.push_back(i);
  }
  return reach_from(topology.adjacency(), std::move(pinned));
}

bool leader_reachable(const Topology& topology) {
  return all_of(leader_reached_nodes(topology));
}

bool spanning_tree_exists(const Topology& topology) {
  for (int root = 0; root < topology.size(); ++root) {
    if (all_of(reach_from(topology.adjacency(), {root}))) return true;
  }
  return false;
}

TopologySchedule::TopologySchedule(Topology fixed, double t0)
    : segments_{{t0, std::move(fixed)}} {}

TopologySchedule::TopologySchedule(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw InvalidModel("topology schedule is empty");
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    if (!(segments_[k].start > segments_[k - 1].start)) {
      throw InvalidModel("topology schedule start times must increase");
    }
    if (segments_[k].topology.size() != segments_[0].topology.size()) {
      throw InvalidModel("topology schedule segments differ in node count");
    }
  }
}

int TopologySchedule::segment_index(double t) const {
  // Largest start <= t; times before the first segment map to it.
  const auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double value, const Segment& s) { return value < s.start; });
  if (it == segments_.begin()) return 0;
  return static_cast<int>(std::distance(segments_.begin(), it)) - 1;
}

bool operator==(const TopologySchedule& a, const TopologySchedule& b) {
  if (a.segments_.size() != b.segments_.size()) return false;
  for (std::size_t k = 0; k < a.segments_.size(); ++k) {
    if (a.segments_[k].start != b.segments_[k].start ||
        !(a.segments_[k].topology == b.segments_[k].topology)) {
      return false;
    }
  }
  return true;
}

}  // namespace dcea
