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
#ifndef DCEA_ERRORS_HPP
#define DCEA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dcea {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

// Smallest singular value of the task Jacobian fell below the threshold.
class SingularJacobian : public Error {
 public:
  SingularJacobian(const std::string& what, double smallest_singular_value)
      : Error(what), sigma_min_(smallest_singular_value) {}
  double smallest_singular_value() const { return sigma_min_; }

 private:
  double sigma_min_;
};

class NotRedundant : public Error {
 public:
  using Error::Error;
};

// A settle-time denominator beta_k - sup|leader derivative| is not positive.
class NonpositiveMargin : public Error {
 public:
  using Error::Error;
};

class NonfiniteState : public Error {
 public:
  using Error::Error;
};

class ScenarioError : public Error {
 public:
  using Error::Error;
};

class TraceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcea

#endif  // DCEA_ERRORS_HPP
