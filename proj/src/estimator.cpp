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
#include "dcea/estimator.hpp"

#include <algorithm>
#include <string>

#include "dcea/errors.hpp"
#include "dcea/signum.hpp"

namespace dcea {

const char* to_string(EstimatorMode mode) {
  return mode == EstimatorMode::kPinned ? "pinned" : "leaderless";
}

double Betas::max() const {
  return std::max({position, velocity, acceleration});
}

Vector6d Betas::expanded() const {
  Vector6d b;
  b << position, position, velocity, velocity, acceleration, acceleration;
  return b;
}

Vector6d estimator_argument(int node, std::span<const Vector6d> zetas,
                            const Topology& topology,
                            const LeaderTrajectory* leader, double t,
                            EstimatorMode mode) {
  if (static_cast<int>(zetas.size()) != topology.size()) {
    throw DimensionMismatch("estimator state count does not match topology");
  }
  Vector6d arg = Vector6d::Zero();
  const Vector6d& own = zetas[node];
  for (int j = 0; j < topology.size(); ++j) {
    const double w = topology.weight(node, j);
    if (w > 0) arg += w * sigma_pair(own, zetas[j]);
  }
  const double b = topology.pinning()[node];
  if (mode == EstimatorMode::kPinned && leader != nullptr && b > 0) {
    arg += b * sigma_leader(own, *leader, t);
  }
  return arg;
}

Vector6d estimator_rate(int node, std::span<const Vector6d> zetas,
                        const Topology& topology,
                        const LeaderTrajectory* leader, double t,
                        EstimatorMode mode, const Betas& betas,
                        double boundary_layer) {
  const Vector6d arg =
      estimator_argument(node, zetas, topology, leader, t, mode);
  return -betas.expanded().cwiseProduct(signum(arg, boundary_layer));
}

double settle_time_bound(std::span<const Vector6d> initial_zetas,
                         const LeaderTrajectory& leader, double t0,
                         const Betas& betas) {
  const LeaderBounds& sup = leader.bounds();
  const double margins[3] = {betas.position - sup.velocity,
                             betas.velocity - sup.acceleration,
                             betas.acceleration - sup.jerk};
  const char* names[3] = {"position", "velocity", "acceleration"};
  for (int k = 0; k < 3; ++k) {
    if (!(margins[k] > 0)) {
      throw NonpositiveMargin(std::string(names[k]) +
                              " estimator gain does not exceed the leader "
                              "derivative bound (margin " +
                              std::to_string(margins[k]) + ")");
    }
  }
  const Vector6d reference = leader.stack(t0);
  double bound = t0;
  for (int k = 0; k < 3; ++k) {
    double worst = 0.0;
    for (const Vector6d& z : initial_zetas) {
      worst = std::max(
          worst, (z.segment<2>(2 * k) - reference.segment<2>(2 * k))
                     .cwiseAbs()
                     .maxCoeff());
    }
    bound = std::max(bound, t0 + worst / margins[k]);
  }
  return bound;
}

}  // namespace dcea
