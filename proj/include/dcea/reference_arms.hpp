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
#ifndef DCEA_REFERENCE_ARMS_HPP
#define DCEA_REFERENCE_ARMS_HPP

#include <vector>

#include "dcea/arm_model.hpp"

namespace dcea {

// The seven heterogeneous arms of the shipped formation scenarios: five
// 2-link arms followed by two redundant 3-link arms.
inline std::vector<ArmModel> reference_arms() {
  using V = Eigen::VectorXd;
  auto v2 = [](double a, double b) { return (V(2) << a, b).finished(); };
  auto v3 = [](double a, double b, double c) { return (V(3) << a, b, c).finished(); };
  return {
      ArmModel(v2(0.8, 0.6), v2(1.4, 0.9), v2(0.8, 0.45), v2(6, 3)),
      ArmModel(v2(1.0, 0.8), v2(1.2, 1.1), v2(0.7, 0.5), v2(2, 3)),
      ArmModel(v2(0.5, 0.8), v2(1.1, 1.3), v2(0.4, 0.6), v2(5, 3)),
      ArmModel(v2(1.5, 0.8), v2(1.1, 1.2), v2(0.6, 0.6), v2(5, 4)),
      ArmModel(v2(2.3, 0.8), v2(1.0, 1.2), v2(0.4, 0.7), v2(5, 3)),
      ArmModel(v3(0.8, 1.2, 1.4), v3(0.8, 1.1, 1.4), v3(0.4, 0.5, 0.7), v3(4, 6, 5)),
      ArmModel(v3(1.8, 1.2, 1.4), v3(1.0, 1.1, 1.2), v3(0.6, 0.6, 0.6), v3(5, 6, 5)),
  };
}

}  // namespace dcea

#endif  // DCEA_REFERENCE_ARMS_HPP
