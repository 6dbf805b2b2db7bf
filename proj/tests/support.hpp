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

// Shared helpers for the unit tests.
#ifndef DCEA_TESTS_SUPPORT_HPP
#define DCEA_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "dcea/arm_model.hpp"
#include "dcea/reference_arms.hpp"

namespace dcea::testing {

inline std::string fixture(const std::string& name) {
  return std::string(DCEA_SOURCE_DIR) + "/scenarios/" + name;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  Eigen::VectorXd vector(int n, double lo = -3.0, double hi = 3.0) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }
  Eigen::VectorXd unit(int n) {
    Eigen::VectorXd v = vector(n, -1.0, 1.0);
    return v / v.norm();
  }
  // Joint angles whose Jacobian is comfortably full rank.
  Eigen::VectorXd regular_q(const ArmModel& arm, double margin = 1e-2) {
    for (;;) {
      Eigen::VectorXd q = vector(arm.dof(), -M_PI, M_PI);
      if (smallest_singular_value(jacobian(arm, q)) > margin) return q;
    }
  }

 private:
  std::mt19937 engine_;
};

inline double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace dcea::testing

#endif  // DCEA_TESTS_SUPPORT_HPP
