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
#include "dcea/leader.hpp"

#include <algorithm>
#include <cmath>

#include "dcea/errors.hpp"

namespace dcea {

EllipseLeader::EllipseLeader(Eigen::Vector2d center, Eigen::Vector2d amplitude,
                             double omega, double phase)
    : center_(center), amplitude_(amplitude), omega_(omega), phase_(phase) {
  if (!center_.allFinite() || !amplitude_.allFinite() ||
      !std::isfinite(omega_) || !std::isfinite(phase_)) {
    throw InvalidModel("leader parameters must be finite");
  }
  bounds_ = analytic_bounds();
}

Eigen::Vector2d EllipseLeader::derivative(double t, int k) const {
  // d^k/dt^k of (sin, cos) cycles through (cos, -sin), (-sin, -cos), ...
  const double arg = omega_ * t + phase_;
  const double s = std::sin(arg);
  const double c = std::cos(arg);
  double sx = 0, sy = 0;
  switch (k % 4) {
    case 0: sx = s; sy = c; break;
    case 1: sx = c; sy = -s; break;
    case 2: sx = -s; sy = -c; break;
    default: sx = -c; sy = s; break;
  }
  const double scale = std::pow(omega_, k);
  return {amplitude_.x() * scale * sx, amplitude_.y() * scale * sy};
}

Eigen::Vector2d EllipseLeader::position(double t) const {
  return center_ + derivative(t, 0);
}
Eigen::Vector2d EllipseLeader::velocity(double t) const {
  return derivative(t, 1);
}
Eigen::Vector2d EllipseLeader::acceleration(double t) const {
  return derivative(t, 2);
}
Eigen::Vector2d EllipseLeader::jerk(double t) const { return derivative(t, 3); }

Vector6d EllipseLeader::stack(double t) const {
  Vector6d out;
  out << position(t), velocity(t), acceleration(t);
  return out;
}

LeaderBounds EllipseLeader::analytic_bounds() const {
  const double a = amplitude_.cwiseAbs().maxCoeff();
  const double w = std::abs(omega_);
  return {a * w, a * w * w, a * w * w * w};
}

}  // namespace dcea
