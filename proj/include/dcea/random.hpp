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
#ifndef DCEA_RANDOM_HPP
#define DCEA_RANDOM_HPP

#include <cstdint>
#include <random>

namespace dcea {

// Seeded uniform source. The mapping from engine output to doubles is fixed
// here rather than left to std::uniform_real_distribution so that traces are
// reproducible across standard library implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi).
  double next(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dcea

#endif  // DCEA_RANDOM_HPP
