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
#ifndef DCEA_SIGNUM_HPP
#define DCEA_SIGNUM_HPP

#include <cmath>

#include <Eigen/Dense>

namespace dcea {

// Elementwise sign with sgn(0) = 0. A positive boundary layer replaces the
// discontinuity by tanh(z / boundary_layer).
template <typename Derived>
typename Derived::PlainObject signum(const Eigen::MatrixBase<Derived>& z,
                                     double boundary_layer = 0.0) {
  using Scalar = typename Derived::Scalar;
  if (boundary_layer > 0) {
    return z.unaryExpr([boundary_layer](Scalar v) {
      return Scalar(std::tanh(v / boundary_layer));
    });
  }
  return z.unaryExpr([](Scalar v) {
    return Scalar((v > 0) - (v < 0));
  });
}

}  // namespace dcea

#endif  // DCEA_SIGNUM_HPP
