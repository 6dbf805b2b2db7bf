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
//
// Distributed sliding-mode estimation of the leader's position, velocity and
// acceleration. Each node i holds zeta_i = col(x_hat, v_hat, a_hat) and moves
// it against the sign of its weighted disagreement with its in-neighbours and,
// when pinned, with the leader.
#ifndef DCEA_ESTIMATOR_HPP
#define DCEA_ESTIMATOR_HPP

#include <span>

#include <Eigen/Dense>

#include "dcea/graph.hpp"
#include "dcea/leader.hpp"

namespace dcea {

enum class EstimatorMode { kPinned, kLeaderless };

const char* to_string(EstimatorMode mode);

// Slew-rate bounds (beta_1, beta_2, beta_3) of the position, velocity and
// acceleration estimates. Finite-time tracking needs each to exceed the
// corresponding leader derivative bound.
struct Betas {
  double position = 0.0;
  double velocity = 0.0;
  double acceleration = 0.0;
  double max() const;
  // diag(b1, b1, b2, b2, b3, b3).
  Vector6d expanded() const;
  friend bool operator==(const Betas&, const Betas&) = default;
};

inline Vector6d sigma_pair(const Vector6d& zeta_i, const Vector6d& zeta_j) {
  return zeta_i - zeta_j;
}

inline Vector6d sigma_leader(const Vector6d& zeta_i,
                             const LeaderTrajectory& leader, double t) {
  return zeta_i - leader.stack(t);
}

// sum_j a_ij sigma_ij + b_i sigma_i; the pinning term is omitted in
// leaderless mode or when `leader` is null.
Vector6d estimator_argument(int node, std::span<const Vector6d> zetas,
                            const Topology& topology,
                            const LeaderTrajectory* leader, double t,
                            EstimatorMode mode);

// -(diag(betas) kron I_2) sgn(estimator_argument). The infinity norm never
// exceeds betas.max().
Vector6d estimator_rate(int node, std::span<const Vector6d> zetas,
                        const Topology& topology,
                        const LeaderTrajectory* leader, double t,
                        EstimatorMode mode, const Betas& betas,
                        double boundary_layer = 0.0);

// Closed-form upper bound on the settle time of the pinned estimator:
// max_k t0 + max_i |component k of zeta_i(t0) - leader(t0)|_inf /
// (beta_k - sup |leader derivative k|_inf). Uses the leader's declared bounds.
// Throws NonpositiveMargin when a denominator is not positive.
double settle_time_bound(std::span<const Vector6d> initial_zetas,
                         const LeaderTrajectory& leader, double t0,
                         const Betas& betas);

}  // namespace dcea

#endif  // DCEA_ESTIMATOR_HPP
