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
#ifndef DCEA_SIMULATION_HPP
#define DCEA_SIMULATION_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dcea/scenario_config.hpp"

namespace dcea {

// Uniformly sampled record of a closed-loop run. Rows are samples, one per
// control tick; columns are named (see docs/trace_schema.md).
struct SimTrace {
  std::vector<std::string> columns;
  Eigen::MatrixXd samples;
  // Set when the run stopped early; samples then hold the rows recorded
  // before the failure.
  std::optional<std::string> abort_reason;

  int rows() const { return static_cast<int>(samples.rows()); }
  bool has_column(std::string_view name) const;
  // Throws TraceError naming the missing column.
  int column(std::string_view name) const;
  Eigen::VectorXd series(std::string_view name) const {
    return samples.col(column(name));
  }
  Eigen::VectorXd time() const { return series("t"); }
};

// Closed-loop simulation with the torque and parameter update held over each
// control period, semi-implicit Euler plant substeps and a piecewise-constant
// seeded disturbance. Singular or non-finite states end the run early with
// abort_reason set.
SimTrace run(const ScenarioConfig& config);

// Two runs differing only in the subtask fields (the second has phi = 0 for
// every arm), sharing all seeds.
std::pair<SimTrace, SimTrace> run_pair_subtask(const ScenarioConfig& config);

// Column names produced by run() for this configuration.
std::vector<std::string> trace_columns(const ScenarioConfig& config);

}  // namespace dcea

#endif  // DCEA_SIMULATION_HPP
