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
#ifndef DCEA_VERIFY_HPP
#define DCEA_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dcea {

struct PropertyResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  double worst = 0.0;      // largest residual seen
  double tolerance = 0.0;  // residual must stay below this
  bool passed() const { return failures == 0; }
};

// Runtime invariant suite behind `dcea verify`: arm-model identities,
// pseudoinverse and projector identities, the regressor identity, graph
// reachability against transitive closure, and estimator locality.
std::vector<PropertyResult> run_invariant_suite(std::uint64_t seed = 1,
                                                int states_per_arm = 1000);

}  // namespace dcea

#endif  // DCEA_VERIFY_HPP
