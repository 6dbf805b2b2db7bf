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
// Local part of the controller-estimator: joint-space auxiliary references
// built from the node's leader estimate, the adaptive torque law and the
// parameter update.
//
//   qdot_r  = J# (v_hat - alpha (x - x_hat)) + (I - J# J) phi
//   qddot_r = dJ#/dt (v_hat - alpha (x - x_hat))
//             + J# (a_hat - alpha (xdot - v_hat)) + d/dt[(I - J# J) phi]
//   s_hat   = qdot - qdot_r
//   u       = Y(q, qdot, qdot_r, qddot_r) theta_hat - J^T Kx J s_hat
//             - Ks s_hat - Kr sgn(s_hat)
//   dtheta_hat/dt = -T Y^T s_hat
#ifndef DCEA_CONTROLLER_HPP
#define DCEA_CONTROLLER_HPP

#include <Eigen/Dense>

#include "dcea/arm_model.hpp"
#include "dcea/leader.hpp"
#include "dcea/subtask.hpp"

namespace dcea {

struct ControlGains {
  double alpha = 1.0;
  Eigen::Matrix2d Kx = Eigen::Matrix2d::Identity();
  Eigen::MatrixXd Ks;
  Eigen::MatrixXd Kr;
  Eigen::VectorXd T;  // diagonal of the adaptation gain

  // Throws DimensionMismatch / InvalidModel when shapes or definiteness are
  // wrong for an arm with `dof` joints.
  void validate(int dof) const;
  friend bool operator==(const ControlGains& a, const ControlGains& b) {
    return a.alpha == b.alpha && a.Kx == b.Kx && same_values(a.Ks, b.Ks) &&
           same_values(a.Kr, b.Kr) && same_values(a.T, b.T);
  }
};

struct EstimatorState {
  Vector6d zeta = Vector6d::Zero();
  Eigen::VectorXd theta_hat;
};

// Task-space target triple (position, velocity, acceleration) that the
// auxiliary references steer toward: the node's estimate in the control loop,
// the true leader for the analysis variables.
struct TaskTarget {
  Eigen::Vector2d x;
  Eigen::Vector2d v;
  Eigen::Vector2d a;
  static TaskTarget from_stack(const Vector6d& zeta) {
    return {zeta.segment<2>(0), zeta.segment<2>(2), zeta.segment<2>(4)};
  }
};

struct AuxReference {
  Eigen::VectorXd qdot_r;
  Eigen::VectorXd qddot_r;
};

Eigen::VectorXd aux_velocity(const ArmModel& arm, const Eigen::VectorXd& q,
                             const TaskTarget& target, double alpha,
                             const SubtaskFunction& subtask, double t);

Eigen::VectorXd aux_acceleration(const ArmModel& arm, const Eigen::VectorXd& q,
                                 const Eigen::VectorXd& qdot,
                                 const TaskTarget& target, double alpha,
                                 const SubtaskFunction& subtask, double t);

// Both references, sharing the kinematic evaluations.
AuxReference auxiliary_reference(const ArmModel& arm, const JointState& state,
                                 const TaskTarget& target, double alpha,
                                 const SubtaskFunction& subtask, double t);

// Analysis variables formed with the true leader instead of the estimate.
struct ReferenceVariables {
  Eigen::VectorXd qdot_r;
  Eigen::VectorXd qddot_r;
  Eigen::VectorXd s;
};

ReferenceVariables reference_variables(const ArmModel& arm,
                                       const JointState& state,
                                       const LeaderTrajectory& leader,
                                       double alpha,
                                       const SubtaskFunction& subtask,
                                       double t);

Eigen::VectorXd control_torque(const ArmModel& arm, const JointState& state,
                               const AuxReference& aux,
                               const Eigen::VectorXd& theta_hat,
                               const ControlGains& gains,
                               double boundary_layer = 0.0);

Eigen::VectorXd theta_hat_rate(const ArmModel& arm, const JointState& state,
                               const AuxReference& aux,
                               const ControlGains& gains);

// (I - J# J)(qdot - phi). Throws NotRedundant for square arms.
Eigen::VectorXd subtask_error(const ArmModel& arm, const JointState& state,
                              const SubtaskFunction& subtask, double t);

// Everything the control loop needs from one evaluation.
struct ControlOutput {
  AuxReference aux;
  Eigen::VectorXd s_hat;
  Eigen::VectorXd u;
  Eigen::VectorXd theta_hat_rate;
};

ControlOutput evaluate_controller(const ArmModel& arm, const JointState& state,
                                  const EstimatorState& estimate,
                                  const ControlGains& gains,
                                  const SubtaskFunction& subtask, double t,
                                  double boundary_layer = 0.0);

}  // namespace dcea

#endif  // DCEA_CONTROLLER_HPP
