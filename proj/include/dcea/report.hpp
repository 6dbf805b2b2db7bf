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
#ifndef DCEA_REPORT_HPP
#define DCEA_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "dcea/scenario_config.hpp"
#include "dcea/simulation.hpp"

namespace dcea {

struct ArmMetrics {
  std::string name;
  std::string subtask = "none";
  bool leader_reachable = true;  // in every topology segment
  // Tail-window maxima; unset without a leader.
  std::optional<double> position_error;
  std::optional<double> velocity_error;
  std::optional<double> final_position_error;
  // Redundant arms with a subtask.
  std::optional<double> subtask_error;
  std::optional<double> joint_target_error;  // |q_j(t_end) - target|
  std::optional<double> mean_manipulability;  // tail average, redundant arms
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct RunReport {
  std::string scenario;
  std::optional<std::string> abort_reason;
  double t_start = 0.0;
  double t_end = 0.0;       // last recorded sample
  double tail_start = 0.0;
  double settle_tolerance = 0.02;
  double control_period = 0.0;
  std::vector<ArmMetrics> arms;

  // Leader estimation, over leader-reachable arms.
  std::optional<double> settle_time_bound;     // t_fmax
  std::optional<double> observed_settle_time;  // unset: never settled
  std::optional<double> max_sigma_after_bound; // over t >= t_fmax + Tc

  // Agreement among arms, reported when there is no leader.
  std::optional<double> consensus_settle_time;
  std::optional<double> estimate_disagreement;  // tail max_ij |zeta_i - zeta_j|_inf
  std::optional<double> position_disagreement;  // tail max_ij |x_i - x_j|

  std::vector<std::string> warnings;
  std::vector<Check> checks;

  bool passed() const;
};

// Pure function of its arguments. Thresholds left unset in the scenario
// produce metrics without checks.
RunReport compute_report(const SimTrace& trace, const ScenarioConfig& config);

// Adds checks comparing a run against its phi = 0 twin: for manipulability
// subtasks the tail-average manipulability must be strictly larger than in
// the twin.
void add_twin_comparison(RunReport& report, const RunReport& twin);

std::string format_report(const RunReport& report);
std::string report_to_json(const RunReport& report);

}  // namespace dcea

#endif  // DCEA_REPORT_HPP
