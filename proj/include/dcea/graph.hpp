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
#ifndef DCEA_GRAPH_HPP
#define DCEA_GRAPH_HPP

#include <vector>

#include <Eigen/Dense>

#include "dcea/eigen_types.hpp"

namespace dcea {

// One directed edge: `to` reads the state of `from`. Node ids are 0-based.
struct Edge {
  int from = 0;
  int to = 0;
  double weight = 1.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted interaction digraph plus leader pinning weights.
//
// Receiver-row convention: adjacency(i, j) > 0 means node i receives node j's
// estimate, so row i of the Laplacian collects node i's in-neighbours.
class Topology {
 public:
  Topology(Eigen::MatrixXd adjacency, Eigen::VectorXd pinning);
  static Topology from_edges(int nodes, const std::vector<Edge>& edges,
                             Eigen::VectorXd pinning);

  int size() const { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const Eigen::VectorXd& pinning() const { return pinning_; }
  double weight(int receiver, int sender) const {
    return adjacency_(receiver, sender);
  }
  // Edge list in row-major order of the adjacency matrix.
  std::vector<Edge> edges() const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return same_values(a.adjacency_, b.adjacency_) &&
           same_values(a.pinning_, b.pinning_);
  }

 private:
  Eigen::MatrixXd adjacency_;
  Eigen::VectorXd pinning_;
};

// L = D - A with D the diagonal of in-degrees.
Eigen::MatrixXd laplacian(const Topology& topology);

// True iff a virtual leader with an edge to every pinned node reaches every
// node.
bool leader_reachable(const Topology& topology);
// Per-node version of leader_reachable.
std::vector<bool> leader_reached_nodes(const Topology& topology);

// True iff some node reaches every other node along directed edges. Pinning
// is ignored.
bool spanning_tree_exists(const Topology& topology);

// Piecewise-constant topology over time; segment k is active on
// [start_k, start_{k+1}).
class TopologySchedule {
 public:
  struct Segment {
    double start = 0.0;
    Topology topology;
  };

  explicit TopologySchedule(Topology fixed, double t0 = 0.0);
  explicit TopologySchedule(std::vector<Segment> segments);

  int segment_index(double t) const;
  const Topology& at(double t) const {
    return segments_[segment_index(t)].topology;
  }
  const std::vector<Segment>& segments() const { return segments_; }
  bool switching() const { return segments_.size() > 1; }
  int size() const { return segments_.front().topology.size(); }

  friend bool operator==(const TopologySchedule& a, const TopologySchedule& b);

 private:
  std::vector<Segment> segments_;
};

}  // namespace dcea

#endif  // DCEA_GRAPH_HPP
