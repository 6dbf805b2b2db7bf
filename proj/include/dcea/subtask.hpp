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
#ifndef DCEA_SUBTASK_HPP
#define DCEA_SUBTASK_HPP

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "dcea/arm_model.hpp"

namespace dcea {

inline constexpr double kSubtaskFdStep = 1e-6;

// Serializable description of a named subtask field.
struct SubtaskSpec {
  enum class Kind { kNone, kJointTarget, kManipulability };
  Kind kind = Kind::kNone;
  int joint = 0;        // 0-based, joint-target only
  double target = 0.0;  // rad, joint-target only
  double gain = 1.0;
  friend bool operator==(const SubtaskSpec&, const SubtaskSpec&) = default;
};

const char* to_string(SubtaskSpec::Kind kind);

// Gradient field phi(t, q) steering the null-space motion of a redundant arm.
class SubtaskFunction {
 public:
  using Field = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

  SubtaskFunction() = default;
  SubtaskFunction(Field phi, std::string description)
      : phi_(std::move(phi)), description_(std::move(description)) {}

  static SubtaskFunction build(const SubtaskSpec& spec, const ArmModel& arm);

  bool is_zero() const { return !phi_; }
  const std::string& description() const { return description_; }

  Eigen::VectorXd operator()(double t, const Eigen::VectorXd& q) const;

  // d/dt phi(t, q(t)) by a central difference along (1, qdot).
  Eigen::VectorXd rate(double t, const Eigen::VectorXd& q,
                       const Eigen::VectorXd& qdot) const;

 private:
  Field phi_;
  std::string description_ = "none";
};

// phi = gain * (target - q_joint) e_joint; gain 9, target 1 on the second
// joint gives col(0, 9 (1 - q2), 0).
SubtaskFunction joint_target_subtask(int dof, int joint, double target,
                                     double gain);

// Central-difference gradient of q -> det(J(q) J(q)^T).
Eigen::VectorXd manipulability_gradient(const ArmModel& arm,
                                        const Eigen::VectorXd& q,
                                        double step = kSubtaskFdStep);

// Same gradient from the analytic dJ/dq_k. The subtask field uses this one:
// its time derivative is taken by finite differences, and differencing the
// finite-difference gradient again would amplify round-off.
Eigen::VectorXd manipulability_gradient_analytic(const ArmModel& arm,
                                                 const Eigen::VectorXd& q);

// gain * manipulability_gradient_analytic(arm, q).
SubtaskFunction manipulability_subtask(const ArmModel& arm, double gain = 1.0);

}  // namespace dcea

#endif  // DCEA_SUBTASK_HPP
