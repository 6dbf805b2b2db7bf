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
#ifndef DCEA_LEADER_HPP
#define DCEA_LEADER_HPP

#include <Eigen/Dense>

namespace dcea {

using Vector6d = Eigen::Matrix<double, 6, 1>;

// Suprema of the infinity norms of the leader velocity, acceleration and jerk.
struct LeaderBounds {
  double velocity = 0.0;
  double acceleration = 0.0;
  double jerk = 0.0;
  friend bool operator==(const LeaderBounds&, const LeaderBounds&) = default;
};

// x0(t) = center + (ax sin(w t + phase), ay cos(w t + phase)).
//
// The only named trajectory shipped; the declared bounds default to the
// analytic suprema max(ax, ay) w^k and may be overridden by the scenario.
class EllipseLeader {
 public:
  EllipseLeader(Eigen::Vector2d center, Eigen::Vector2d amplitude,
                double omega, double phase = 0.0);

  Eigen::Vector2d position(double t) const;
  Eigen::Vector2d velocity(double t) const;
  Eigen::Vector2d acceleration(double t) const;
  Eigen::Vector2d jerk(double t) const;

  // col(x0, v0, a0).
  Vector6d stack(double t) const;

  const LeaderBounds& bounds() const { return bounds_; }
  LeaderBounds analytic_bounds() const;
  void set_bounds(const LeaderBounds& b) { bounds_ = b; }

  const Eigen::Vector2d& center() const { return center_; }
  const Eigen::Vector2d& amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  double phase() const { return phase_; }

  friend bool operator==(const EllipseLeader&, const EllipseLeader&) = default;

 private:
  // k-th derivative of the oscillating part.
  Eigen::Vector2d derivative(double t, int k) const;

  Eigen::Vector2d center_;
  Eigen::Vector2d amplitude_;
  double omega_;
  double phase_;
  LeaderBounds bounds_;
};

using LeaderTrajectory = EllipseLeader;

}  // namespace dcea

#endif  // DCEA_LEADER_HPP
