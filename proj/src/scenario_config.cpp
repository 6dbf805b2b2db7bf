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
#include "dcea/scenario_config.hpp"

#include <cmath>
#include <sstream>

#include "dcea/errors.hpp"

namespace dcea {

namespace {

bool divides(double step, double period) {
  const double ratio = period / step;
  return std::abs(ratio - std::round(ratio)) < 1e-9 * std::max(1.0, ratio) &&
         std::round(ratio) >= 1;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (arms.empty()) throw ScenarioError("scenario has no arms");
  if (topology.size() != static_cast<int>(arms.size())) {
    throw ScenarioError("topology has " + std::to_string(topology.size()) +
                        " nodes but the scenario has " +
                        std::to_string(arms.size()) + " arms");
  }
  if (topology.segments().front().start != timing.t0) {
    throw ScenarioError("first topology segment must start at t0");
  }
  if (!(timing.t_end > timing.t0)) throw ScenarioError("t_end must exceed t0");
  if (!(timing.dt > 0) || !(timing.control_period > 0)) {
    throw ScenarioError("dt and control_period must be positive");
  }
  if (!divides(timing.dt, timing.control_period)) {
    throw ScenarioError("dt must divide the control period");
  }
  if (timing.estimator_dt && !divides(*timing.estimator_dt, timing.dt)) {
    throw ScenarioError("estimator_dt must divide dt");
  }
  if (!divides(timing.dt, disturbance_hold())) {
    throw ScenarioError("dt must divide the disturbance hold period");
  }
  if (!(disturbance.bound >= 0)) {
    throw ScenarioError("disturbance bound must be nonnegative");
  }
  if (mode == EstimatorMode::kPinned && !leader) {
    throw ScenarioError("pinned estimator mode requires a leader");
  }
  if (!(betas.position > 0) || !(betas.velocity > 0) ||
      !(betas.acceleration > 0)) {
    throw ScenarioError("estimator betas must be positive");
  }
  if (!(boundary_layer >= 0)) {
    throw ScenarioError("boundary layer must be nonnegative");
  }
  for (const ArmSetup& arm : arms) {
    const int p = arm.model.dof();
    try {
      arm.gains.validate(p);
      if (arm.initial.q.size() != p || arm.initial.qdot.size() != p) {
        throw DimensionMismatch("initial joint state has wrong length");
      }
      if (arm.initial_estimate.theta_hat.size() != arm.model.parameter_count()) {
        throw DimensionMismatch("initial parameter estimate has wrong length");
      }
      if (arm.subtask.kind != SubtaskSpec::Kind::kNone && !arm.model.redundant()) {
        throw NotRedundant("subtask requires a redundant arm");
      }
      if (arm.subtask.kind == SubtaskSpec::Kind::kJointTarget &&
          (arm.subtask.joint < 0 || arm.subtask.joint >= p)) {
        throw InvalidModel("subtask joint out of range");
      }
    } catch (const Error& e) {
      throw ScenarioError("arm '" + arm.name + "': " + e.what());
    }
  }
}

std::vector<std::string> ScenarioConfig::warnings() const {
  std::vector<std::string> out;
  const auto& segs = topology.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Topology& g = segs[k].topology;
    const std::string where =
        segs.size() > 1 ? " in topology segment " + std::to_string(k + 1) : "";
    if (mode == EstimatorMode::kPinned && !leader_reachable(g)) {
      out.push_back("leader does not reach every node" + where +
                    " (tracking hypothesis A1 violated)");
    }
    if (mode == EstimatorMode::kLeaderless && !spanning_tree_exists(g)) {
      out.push_back("graph has no spanning tree" + where);
    }
  }
  if (leader && mode == EstimatorMode::kPinned) {
    const LeaderBounds& b = leader->bounds();
    if (!(betas.position > b.velocity) || !(betas.velocity > b.acceleration) ||
        !(betas.acceleration > b.jerk)) {
      out.push_back("estimator betas do not strictly exceed the leader "
                    "derivative bounds (hypothesis A2 violated)");
    }
  }
  for (const ArmSetup& arm : arms) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        (arm.gains.Kr + arm.gains.Kr.transpose()) / 2);
    if (eig.eigenvalues().minCoeff() < disturbance.bound) {
      std::ostringstream msg;
      msg << "arm '" << arm.name << "': lambda_min(Kr) = "
          << eig.eigenvalues().minCoeff() << " is below the disturbance bound "
          << disturbance.bound << " (robust-gain hypothesis violated)";
      out.push_back(msg.str());
    }
  }
  return out;
}

}  // namespace dcea
