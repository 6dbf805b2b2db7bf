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
#ifndef DCEA_SCENARIO_CONFIG_HPP
#define DCEA_SCENARIO_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcea/arm_model.hpp"
#include "dcea/controller.hpp"
#include "dcea/estimator.hpp"
#include "dcea/graph.hpp"
#include "dcea/leader.hpp"
#include "dcea/subtask.hpp"

namespace dcea {

struct ArmSetup {
  std::string name;
  ArmModel model;
  JointState initial;
  EstimatorState initial_estimate;
  ControlGains gains;
  SubtaskSpec subtask;
};

struct Timing {
  double t0 = 0.0;
  double t_end = 20.0;
  double control_period = 0.01;  // torque and parameter update hold
  double dt = 0.001;             // plant integration substep
  // Integration step of the leader estimators; must divide dt. Unset means
  // the estimator rate is held over the control period like the torque.
  std::optional<double> estimator_dt;
  friend bool operator==(const Timing&, const Timing&) = default;
};

struct DisturbanceSpec {
  double bound = 0.0;  // per-component bound (N m)
  double hold = 0.0;   // seconds; 0 means one control period
  std::uint64_t seed = 0;
  friend bool operator==(const DisturbanceSpec&, const DisturbanceSpec&) = default;
};

// Pass/fail thresholds evaluated by compute_report. Unset entries are not
// checked.
struct Thresholds {
  double settle_tolerance = 0.02;
  std::optional<double> tail_start;  // default: final 25% of the run
  std::optional<double> position_error;
  std::optional<double> velocity_error;
  std::optional<double> subtask_error;
  std::optional<double> joint_target_error;
  std::optional<double> pairwise_position_error;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<ArmSetup> arms;
  TopologySchedule topology{Topology(Eigen::MatrixXd::Zero(1, 1),
                                     Eigen::VectorXd::Zero(1))};
  std::optional<LeaderTrajectory> leader;
  EstimatorMode mode = EstimatorMode::kPinned;
  Betas betas;
  double boundary_layer = 0.0;  // 0: exact sgn
  DisturbanceSpec disturbance;
  Timing timing;
  Thresholds thresholds;

  const LeaderTrajectory* leader_ptr() const {
    return leader ? &*leader : nullptr;
  }
  double disturbance_hold() const {
    return disturbance.hold > 0 ? disturbance.hold : timing.control_period;
  }
  // Throws ScenarioError naming the violated invariant.
  void validate() const;
  // Human-readable warnings for hypotheses that are violated but do not
  // prevent a run (leader reachability, robust gain versus disturbance).
  std::vector<std::string> warnings() const;
};

}  // namespace dcea

#endif  // DCEA_SCENARIO_CONFIG_HPP
