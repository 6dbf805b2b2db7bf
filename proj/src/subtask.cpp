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
#include "dcea/subtask.hpp"

#include <sstream>

#include "dcea/errors.hpp"

namespace dcea {

const char* to_string(SubtaskSpec::Kind kind) {
  switch (kind) {
    case SubtaskSpec::Kind::kNone: return "none";
    case SubtaskSpec::Kind::kJointTarget: return "joint-target";
    case SubtaskSpec::Kind::kManipulability: return "manipulability";
  }
  return "none";
}

Eigen::VectorXd SubtaskFunction::operator()(double t,
                                            const Eigen::VectorXd& q) const {
  if (!phi_) return Eigen::VectorXd::Zero(q.size());
  return phi_(t, q);
}

Eigen::VectorXd SubtaskFunction::rate(double t, const Eigen::VectorXd& q,
                                      const Eigen::VectorXd& qdot) const {
  if (!phi_) return Eigen::VectorXd::Zero(q.size());
  const double h = kSubtaskFdStep;
  return (phi_(t + h, q + h * qdot) - phi_(t - h, q - h * qdot)) / (2 * h);
}

SubtaskFunction SubtaskFunction::build(const SubtaskSpec& spec,
                                       const ArmModel& arm) {
  switch (spec.kind) {
    case SubtaskSpec::Kind::kNone:
      return {};
    case SubtaskSpec::Kind::kJointTarget:
      return joint_target_subtask(arm.dof(), spec.joint, spec.target,
                                  spec.gain);
    case SubtaskSpec::Kind::kManipulability:
      return manipulability_subtask(arm, spec.gain);
  }
  return {};
}

SubtaskFunction joint_target_subtask(int dof, int joint, double target,
                                     double gain) {
  if (joint < 0 || joint >= dof) {
    throw InvalidModel("joint-target subtask joint " +
                       std::to_string(joint + 1) + " out of range");
  }
  std::ostringstream desc;
  desc << "joint-target q" << joint + 1 << " -> " << target << " (gain "
       << gain << ")";
  return SubtaskFunction(
      [dof, joint, target, gain](double, const Eigen::VectorXd& q) {
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(dof);
        phi[joint] = gain * (target - q[joint]);
        return phi;
      },
      desc.str());
}

Eigen::VectorXd manipulability_gradient(const ArmModel& arm,
                                        const Eigen::VectorXd& q,
                                        double step) {
  if (!arm.redundant()) {
    throw NotRedundant("manipulability gradient requires a redundant arm");
  }
  detail::check_size(arm, q, "q");
  Eigen::VectorXd grad(q.size());
  Eigen::VectorXd probe = q;
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    probe[k] = q[k] + step;
    const double up = manipulability(arm, probe);
    probe[k] = q[k] - step;
    const double down = manipulability(arm, probe);
    probe[k] = q[k];
    grad[k] = (up - down) / (2 * step);
  }
  return grad;
}

Eigen::VectorXd manipulability_gradient_analytic(const ArmModel& arm,
                                                 const Eigen::VectorXd& q) {
  if (!arm.redundant()) {
    throw NotRedundant("manipulability gradient requires a redundant arm");
  }
  const Eigen::Matrix2Xd jac = jacobian(arm, q);
  const Eigen::Matrix2d jjt = jac * jac.transpose();
  // d det(A) = det(A) tr(A^-1 dA), written via the adjugate to stay finite
  // at singular configurations.
  Eigen::Matrix2d adj;
  adj << jjt(1, 1), -jjt(0, 1), -jjt(1, 0), jjt(0, 0);
  Eigen::VectorXd grad(q.size());
  for (int k = 0; k < arm.dof(); ++k) {
    const Eigen::Matrix2Xd dj = jacobian_partial(arm, q, k);
    const Eigen::Matrix2d da =
        dj * jac.transpose() + jac * dj.transpose();
    grad[k] = (adj * da).trace();
  }
  return grad;
}

SubtaskFunction manipulability_subtask(const ArmModel& arm, double gain) {
  if (!arm.redundant()) {
    throw NotRedundant("manipulability subtask requires a redundant arm");
  }
  std::ostringstream desc;
  desc << "manipulability gradient (gain " << gain << ")";
  return SubtaskFunction(
      [arm, gain](double, const Eigen::VectorXd& q) {
        return Eigen::VectorXd(gain * manipulability_gradient_analytic(arm, q));
      },
      desc.str());
}

}  // namespace dcea
