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
// Scenario files are YAML documents; the schema is described in
// docs/scenario_format.md. Unknown keys are rejected and every diagnostic
// carries the file name, line and column of the offending node.
#ifndef DCEA_SCENARIO_IO_HPP
#define DCEA_SCENARIO_IO_HPP

#include <string>
#include <vector>

#include "dcea/scenario_config.hpp"

namespace dcea {

struct ParsedScenario {
  ScenarioConfig config;
  std::vector<std::string> warnings;
};

ParsedScenario parse_scenario_text(const std::string& text,
                                   const std::string& source = "<string>");
ParsedScenario parse_scenario(const std::string& path);

// Emits a scenario document that parses back to an equal configuration.
// Initial conditions are always written explicitly.
std::string serialize_scenario(const ScenarioConfig& config);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace dcea

#endif  // DCEA_SCENARIO_IO_HPP
