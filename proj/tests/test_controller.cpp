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

#include <cmath>

#include "dcea/controller.hpp"
#include "dcea/errors.hpp"
#include "dcea/leader.hpp"
#include "dcea/signum.hpp"
#include "dcea/subtask.hpp"
#include "support.hpp"

using namespace dcea;
using dcea::testing::max_abs;
using dcea::testing::Rng;

namespace {

const std::vector<ArmModel> kArms = reference_arms();

ControlGains gains_for(int dof) {
  ControlGains g;
  g.alpha = 3.0;
  g.Kx = Eigen::Vector2d(50, 50).asDiagonal();
  g.Ks = Eigen::MatrixXd::Identity(dof, dof) * (dof == 2 ? 100.0 : 150.0);
  g.Kr = Eigen::MatrixXd::Identity(dof, dof) * 60.0;
  g.T = Eigen::VectorXd::Constant(2 * dof, 0.1);
  return g;
}

TaskTarget random_target(Rng& rng) {
  return {rng.vector(2, 0.5, 2.0), rng.vector(2, -1, 1), rng.vector(2, -1, 1)};
}

}  // namespace

TEST_CASE("auxiliary velocity") {
  Rng rng(59);
  const SubtaskFunction none;
  SUBCASE("at the target with zero velocity and no subtask") {
    for (const ArmModel& arm : kArms) {
      const Eigen::VectorXd q = rng.regular_q(arm);
      const TaskTarget target{forward_kinematics(arm, q), Eigen::Vector2d::Zero(),
                              Eigen::Vector2d::Zero()};
      CHECK(max_abs(aux_velocity(arm, q, target, 3.0, none, 0.0)) < 1e-12);
    }
  }
  SUBCASE("square arms invert the Jacobian") {
    for (int a = 0; a < 5; ++a) {
      const Eigen::VectorXd q = rng.regular_q(kArms[a], 0.1);
      const TaskTarget target = random_target(rng);
      const Eigen::Matrix2d j = jacobian(kArms[a], q);
      const Eigen::Vector2d expected =
          j.inverse() * (target.v - 3.0 * (forward_kinematics(kArms[a], q) - target.x));
      CHECK(max_abs(aux_velocity(kArms[a], q, target, 3.0, none, 0.0) - expected) < 1e-9);
    }
  }
  SUBCASE("task-space image of the reference") {
    const SubtaskFunction phi = joint_target_subtask(3, 1, 1.0, 9.0);
    for (int a = 5; a < 7; ++a) {
      const Eigen::VectorXd q = rng.regular_q(kArms[a], 0.1);
      const TaskTarget target = random_target(rng);
      const Eigen::VectorXd qr = aux_velocity(kArms[a], q, target, 3.0, phi, 0.0);
      const Eigen::Vector2d want = target.v - 3.0 * (forward_kinematics(kArms[a], q) - target.x);
      CHECK((jacobian(kArms[a], q) * qr - want).norm() < 1e-10);
    }
  }
}

TEST_CASE("auxiliary acceleration is the time derivative of the velocity") {
  EllipseLeader leader({1.2, 1.3}, {0.5, 0.3}, M_PI);
  Rng rng(61);
  for (int a = 0; a < 7; ++a) {
    const ArmModel& arm = kArms[a];
    const SubtaskFunction phi =
        a == 5 ? joint_target_subtask(3, 1, 1.0, 9.0)
               : (a == 6 ? manipulability_subtask(arm) : SubtaskFunction());
    const Eigen::VectorXd q = rng.regular_q(arm, 0.2);
    const Eigen::VectorXd qd = rng.vector(arm.dof(), -1, 1);
    const double t = 0.4;
    const double h = 1e-5;
    auto at = [&](double dt) {
      const TaskTarget target = TaskTarget::from_stack(leader.stack(t + dt));
      return aux_velocity(arm, Eigen::VectorXd(q + dt * qd), target, 3.0, phi, t + dt);
    };
    const Eigen::VectorXd fd = (at(h) - at(-h)) / (2 * h);
    const Eigen::VectorXd exact =
        aux_acceleration(arm, q, qd, TaskTarget::from_stack(leader.stack(t)), 3.0, phi, t);
    CAPTURE(a);
    CHECK((exact - fd).norm() < 1e-4 * std::max(1.0, exact.norm()));
  }
}

TEST_CASE("exact estimates make the estimated and true references coincide") {
  EllipseLeader leader({1.2, 1.3}, {0.5, 0.3}, M_PI);
  Rng rng(67);
  for (const ArmModel& arm : kArms) {
    const JointState state{rng.regular_q(arm, 0.1), rng.vector(arm.dof(), -1, 1)};
    const SubtaskFunction none;
    const double t = 1.3;
    const AuxReference aux =
        auxiliary_reference(arm, state, TaskTarget::from_stack(leader.stack(t)), 3.0, none, t);
    const ReferenceVariables ref = reference_variables(arm, state, leader, 3.0, none, t);
    CHECK(max_abs((state.qdot - aux.qdot_r) - ref.s) == 0.0);
    const JointState on_ref{state.q, ref.qdot_r};
    CHECK(max_abs(reference_variables(arm, on_ref, leader, 3.0, none, t).s) < 1e-12);
  }
}

TEST_CASE("torque law term by term") {
  Rng rng(71);
  for (const ArmModel& arm : kArms) {
    const int p = arm.dof();
    const ControlGains g = gains_for(p);
    const JointState state{rng.regular_q(arm, 0.1), rng.vector(p, -1, 1)};
    const AuxReference aux{rng.vector(p, -1, 1), rng.vector(p, -1, 1)};
    const Eigen::VectorXd theta_hat = rng.vector(2 * p, 0, 5);

    const Eigen::VectorXd s = state.qdot - aux.qdot_r;
    const Eigen::Matrix2Xd j = jacobian(arm, state.q);
    Eigen::VectorXd sgn(p);
    for (int k = 0; k < p; ++k) sgn[k] = s[k] > 0 ? 1.0 : (s[k] < 0 ? -1.0 : 0.0);
    const Eigen::VectorXd expected =
        regressor(arm, state.q, state.qdot, aux.qdot_r, aux.qddot_r) * theta_hat -
        j.transpose() * g.Kx * j * s - g.Ks * s - g.Kr * sgn;
    CHECK(max_abs(control_torque(arm, state, aux, theta_hat, g) - expected) < 1e-10);

    // On the reference with the true parameters the law is pure feedforward.
    const AuxReference on{state.qdot, aux.qddot_r};
    const Eigen::VectorXd ff = inertia_matrix(arm, state.q) * on.qddot_r +
                               coriolis_matrix(arm, state.q, state.qdot) * on.qdot_r +
                               gravity_vector(arm, state.q);
    CHECK(max_abs(control_torque(arm, state, on, arm.parameters(), g) - ff) < 1e-9);
    CHECK(max_abs(control_torque(arm, state, on, Eigen::VectorXd::Zero(2 * p), g)) == 0.0);
  }
}

TEST_CASE("parameter update") {
  Rng rng(73);
  for (const ArmModel& arm : kArms) {
    const int p = arm.dof();
    ControlGains g = gains_for(p);
    const JointState state{rng.regular_q(arm, 0.1), rng.vector(p, -1, 1)};
    const AuxReference on{state.qdot, rng.vector(p, -1, 1)};
    CHECK(max_abs(theta_hat_rate(arm, state, on, g)) == 0.0);

    const AuxReference aux{rng.vector(p, -1, 1), rng.vector(p, -1, 1)};
    const Eigen::VectorXd base = theta_hat_rate(arm, state, aux, g);
    const Eigen::MatrixXd y = regressor(arm, state.q, state.qdot, aux.qdot_r, aux.qddot_r);
    CHECK(max_abs(base + 0.1 * y.transpose() * (state.qdot - aux.qdot_r)) < 1e-12);
    g.T *= 2.5;
    CHECK(max_abs(theta_hat_rate(arm, state, aux, g) - 2.5 * base) < 1e-12);
  }
}

TEST_CASE("one controller evaluation matches the separate pieces") {
  Rng rng(79);
  const ArmModel& arm = kArms[6];
  const ControlGains g = gains_for(3);
  const JointState state{rng.regular_q(arm, 0.1), rng.vector(3, -1, 1)};
  EstimatorState est;
  est.zeta = rng.vector(6, -1, 1);
  est.zeta.head<2>() += Eigen::Vector2d(1.2, 1.3);
  est.theta_hat = rng.vector(6, 0, 5);
  const SubtaskFunction phi = manipulability_subtask(arm);
  const ControlOutput out = evaluate_controller(arm, state, est, g, phi, 0.5, 0.01);
  const AuxReference aux =
      auxiliary_reference(arm, state, TaskTarget::from_stack(est.zeta), g.alpha, phi, 0.5);
  CHECK(max_abs(out.aux.qdot_r - aux.qdot_r) < 1e-12);
  CHECK(max_abs(out.aux.qddot_r - aux.qddot_r) < 1e-12);
  CHECK(max_abs(out.u - control_torque(arm, state, aux, est.theta_hat, g, 0.01)) < 1e-9);
  CHECK(max_abs(out.theta_hat_rate - theta_hat_rate(arm, state, aux, g)) < 1e-12);
}

TEST_CASE("gain validation") {
  ControlGains g = gains_for(2);
  CHECK_NOTHROW(g.validate(2));
  CHECK_THROWS_AS(g.validate(3), DimensionMismatch);
  g.Kr(0, 0) = -1;
  CHECK_THROWS_AS(g.validate(2), InvalidModel);
}

TEST_CASE("subtask error") {
  Rng rng(83);
  const SubtaskFunction phi = joint_target_subtask(3, 1, 1.0, 9.0);
  EllipseLeader leader({1.2, 1.3}, {0.5, 0.3}, M_PI);
  for (int a = 5; a < 7; ++a) {
    const ArmModel& arm = kArms[a];
    const Eigen::VectorXd q = rng.regular_q(arm, 0.1);
    CHECK(max_abs(subtask_error(arm, {q, phi(0.0, q)}, phi, 0.0)) < 1e-15);
    const JointState state{q, rng.vector(3, -1, 1)};
    const ReferenceVariables ref = reference_variables(arm, state, leader, 3.0, phi, 0.7);
    const Eigen::VectorXd es = subtask_error(arm, state, phi, 0.7);
    CHECK(max_abs(null_projector(arm, q) * ref.s - es) < 1e-10);
  }
  CHECK_THROWS_AS(subtask_error(kArms[0], {Eigen::Vector2d(0.1, 1.0), Eigen::Vector2d::Zero()},
                                SubtaskFunction(), 0.0),
                  NotRedundant);
}

TEST_CASE("joint-target field") {
  const SubtaskFunction phi = joint_target_subtask(3, 1, 1.0, 9.0);
  const Eigen::VectorXd v = phi(0.0, Eigen::Vector3d(0.4, 0.25, -2.0));
  CHECK(v[0] == 0.0);
  CHECK(v[1] == doctest::Approx(9 * 0.75));
  CHECK(v[2] == 0.0);
  CHECK_THROWS_AS(joint_target_subtask(3, 3, 1.0, 9.0), InvalidModel);
}

TEST_CASE("manipulability gradient is the steepest ascent direction") {
  Rng rng(89);
  for (int a = 5; a < 7; ++a) {
    const ArmModel& arm = kArms[a];
    for (int n = 0; n < 10; ++n) {
      const Eigen::VectorXd q = rng.vector(3);
      const Eigen::VectorXd grad = manipulability_gradient(arm, q);
      CHECK(max_abs(grad - manipulability_gradient_analytic(arm, q)) < 1e-6 * std::max(1.0, grad.norm()));
      auto slope = [&](const Eigen::VectorXd& d) {
        const double h = 1e-6;
        return (manipulability(arm, Eigen::VectorXd(q + h * d)) -
                manipulability(arm, Eigen::VectorXd(q - h * d))) / (2 * h);
      };
      if (grad.norm() < 1e-8) continue;
      const double best = slope(grad.normalized());
      for (int k = 0; k < 100; ++k) CHECK(slope(rng.unit(3)) <= best + 1e-6);
    }
  }
}

TEST_CASE("manipulability gradient vanishes at a local maximum") {
  const ArmModel& arm = kArms[6];
  // Pattern search on the two relative angles that affect det(J J^T).
  Eigen::Vector3d q(0.0, 1.0, 1.0);
  double step = 0.5;
  double best = manipulability(arm, q);
  while (step > 1e-9) {
    bool moved = false;
    for (int k = 1; k < 3; ++k) {
      for (double sign : {1.0, -1.0}) {
        Eigen::Vector3d trial = q;
        trial[k] += sign * step;
        const double m = manipulability(arm, trial);
        if (m > best) {
          best = m;
          q = trial;
          moved = true;
        }
      }
    }
    if (!moved) step /= 2;
  }
  CHECK(manipulability_gradient(arm, q).norm() < 1e-5 * best);
}

TEST_CASE("signum") {
  const Eigen::Vector3d z(-2.0, 0.0, 1e-300);
  CHECK(signum(z) == Eigen::Vector3d(-1, 0, 1));
  CHECK(signum(z, 0.5)[0] == doctest::Approx(std::tanh(-4.0)));
}
