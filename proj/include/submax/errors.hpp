// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBMAX_ERRORS_HPP_
#define SUBMAX_ERRORS_HPP_

#include <stdexcept>

namespace submax {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments to an operation: bad indices, duplicate elements,
// overlapping sets, non-symmetric matrices, and the like.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration: k out of range, delta outside (0,1),
// unknown algorithm names, malformed config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An exact enumeration would exceed its budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Numerically degenerate input: zero columns, zero response, an objective
// that vanishes where a ratio needs to divide by it.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// The inner solver did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Metric undefined for the given input (e.g. single-class labels).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace submax

#endif  // SUBMAX_ERRORS_HPP_
