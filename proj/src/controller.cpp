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
#include "dcea/controller.hpp"

#include <string>

#include "dcea/errors.hpp"
#include "dcea/signum.hpp"

namespace dcea {

namespace {

void require_square(const Eigen::MatrixXd& m, int dof, const char* name) {
  if (m.rows() != dof || m.cols() != dof) {
    throw DimensionMismatch(std::string(name) + " is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(dof) + "x" + std::to_string(dof));
  }
}

bool positive_definite(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = (m + m.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  return eig.eigenvalues().minCoeff() > 0;
}

// Kinematic quantities shared by the velocity and acceleration references.
struct Kinematics {
  Eigen::Vector2d x;
  Eigen::Vector2d xdot;
  Eigen::Matrix2Xd jac;
  Eigen::Matrix2Xd jac_dot;
  Eigen::MatrixX2d pinv;
  Eigen::MatrixX2d pinv_dot;
  Eigen::MatrixXd projector;
};

Kinematics kinematics(const ArmModel& arm, const Eigen::VectorXd& q,
                      const Eigen::VectorXd& qdot) {
  Kinematics k;
  k.x = forward_kinematics(arm, q);
  k.jac = jacobian(arm, q);
  k.xdot = k.jac * qdot;
  k.jac_dot = jacobian_dot(arm, q, qdot);
  k.pinv = j_sharp(arm, q);
  k.pinv_dot = j_sharp_dot(arm, q, qdot);
  k.projector = null_projector(arm, q);
  return k;
}

AuxReference references_from(const ArmModel& arm, const Kinematics& k,
                             const JointState& state, const TaskTarget& target,
                             double alpha, const SubtaskFunction& subtask,
                             double t) {
  const Eigen::Vector2d task_velocity = target.v - alpha * (k.x - target.x);
  const Eigen::Vector2d task_accel = target.a - alpha * (k.xdot - target.v);
  AuxReference aux;
  aux.qdot_r = k.pinv * task_velocity;
  aux.qddot_r = k.pinv_dot * task_velocity + k.pinv * task_accel;
  if (arm.redundant() && !subtask.is_zero()) {
    const Eigen::VectorXd phi = subtask(t, state.q);
    const Eigen::VectorXd phi_dot = subtask.rate(t, state.q, state.qdot);
    const Eigen::MatrixXd projector_dot =
        -(k.pinv_dot * k.jac + k.pinv * k.jac_dot);
    aux.qdot_r += k.projector * phi;
    aux.qddot_r += projector_dot * phi + k.projector * phi_dot;
  }
  return aux;
}

}  // namespace

void ControlGains::validate(int dof) const {
  if (!(alpha > 0)) throw InvalidModel("alpha must be positive");
  if (!positive_definite(Kx)) throw InvalidModel("Kx must be positive definite");
  require_square(Ks, dof, "Ks");
  require_square(Kr, dof, "Kr");
  if (!positive_definite(Ks)) throw InvalidModel("Ks must be positive definite");
  if (!positive_definite(Kr)) throw InvalidModel("Kr must be positive definite");
  if (T.size() != ArmModel::parameter_count(dof)) {
    throw DimensionMismatch("T has " + std::to_string(T.size()) +
                            " entries, expected " +
                            std::to_string(ArmModel::parameter_count(dof)));
  }
  if ((T.array() <= 0).any()) throw InvalidModel("T must be positive");
}

Eigen::VectorXd aux_velocity(const ArmModel& arm, const Eigen::VectorXd& q,
                             const TaskTarget& target, double alpha,
                             const SubtaskFunction& subtask, double t) {
  const Eigen::Vector2d x = forward_kinematics(arm, q);
  const Eigen::MatrixX2d pinv = j_sharp(arm, q);
  Eigen::VectorXd qdot_r = pinv * (target.v - alpha * (x - target.x));
  if (arm.redundant() && !subtask.is_zero()) {
    qdot_r += null_projector(arm, q) * subtask(t, q);
  }
  return qdot_r;
}

Eigen::VectorXd aux_acceleration(const ArmModel& arm, const Eigen::VectorXd& q,
                                 const Eigen::VectorXd& qdot,
                                 const TaskTarget& target, double alpha,
                                 const SubtaskFunction& subtask, double t) {
  return auxiliary_reference(arm, {q, qdot}, target, alpha, subtask, t)
      .qddot_r;
}

AuxReference auxiliary_reference(const ArmModel& arm, const JointState& state,
                                 const TaskTarget& target, double alpha,
                                 const SubtaskFunction& subtask, double t) {
  const Kinematics k = kinematics(arm, state.q, state.qdot);
  return references_from(arm, k, state, target, alpha, subtask, t);
}

ReferenceVariables reference_variables(const ArmModel& arm,
                                       const JointState& state,
                                       const LeaderTrajectory& leader,
                                       double alpha,
                                       const SubtaskFunction& subtask,
                                       double t) {
  const AuxReference ref = auxiliary_reference(
      arm, state, TaskTarget::from_stack(leader.stack(t)), alpha, subtask, t);
  return {ref.qdot_r, ref.qddot_r, state.qdot - ref.qdot_r};
}

Eigen::VectorXd control_torque(const ArmModel& arm, const JointState& state,
                               const AuxReference& aux,
                               const Eigen::VectorXd& theta_hat,
                               const ControlGains& gains,
                               double boundary_layer) {
  const Eigen::VectorXd s_hat = state.qdot - aux.qdot_r;
  const Eigen::Matrix2Xd jac = jacobian(arm, state.q);
  const Eigen::MatrixXd y =
      regressor(arm, state.q, state.qdot, aux.qdot_r, aux.qddot_r);
  return y * theta_hat - jac.transpose() * gains.Kx * jac * s_hat -
         gains.Ks * s_hat - gains.Kr * signum(s_hat, boundary_layer);
}

Eigen::VectorXd theta_hat_rate(const ArmModel& arm, const JointState& state,
                               const AuxReference& aux,
                               const ControlGains& gains) {
  const Eigen::VectorXd s_hat = state.qdot - aux.qdot_r;
  const Eigen::MatrixXd y =
      regressor(arm, state.q, state.qdot, aux.qdot_r, aux.qddot_r);
  return -(gains.T.asDiagonal() * (y.transpose() * s_hat));
}

Eigen::VectorXd subtask_error(const ArmModel& arm, const JointState& state,
                              const SubtaskFunction& subtask, double t) {
  if (!arm.redundant()) {
    throw NotRedundant("subtask error is defined for redundant arms only");
  }
  return null_projector(arm, state.q) * (state.qdot - subtask(t, state.q));
}

ControlOutput evaluate_controller(const ArmModel& arm, const JointState& state,
                                  const EstimatorState& estimate,
                                  const ControlGains& gains,
                                  const SubtaskFunction& subtask, double t,
                                  double boundary_layer) {
  const Kinematics k = kinematics(arm, state.q, state.qdot);
  ControlOutput out;
  out.aux = references_from(arm, k, state, TaskTarget::from_stack(estimate.zeta),
                            gains.alpha, subtask, t);
  out.s_hat = state.qdot - out.aux.qdot_r;
  const Eigen::MatrixXd y =
      regressor(arm, state.q, state.qdot, out.aux.qdot_r, out.aux.qddot_r);
  out.u = y * estimate.theta_hat -
          k.jac.transpose() * gains.Kx * k.jac * out.s_hat -
          gains.Ks * out.s_hat - gains.Kr * signum(out.s_hat, boundary_layer);
  out.theta_hat_rate = -(gains.T.asDiagonal() * (y.transpose() * out.s_hat));
  return out;
}

}  // namespace dcea
