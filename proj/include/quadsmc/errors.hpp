// Copyright 2026 The quadsmc Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace quadsmc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Configuration document is malformed or fails schema validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// |cos(theta)| fell below the Euler-rate map tolerance.
class GimbalLockError : public Error {
 public:
  using Error::Error;
};

/// |cos(phi) cos(theta)| too small for the thrust law.
class ThrustSingularityError : public Error {
 public:
  using Error::Error;
};

/// |U1| too small to extract the horizontal virtual controls.
class VirtualControlSingularityError : public Error {
 public:
  using Error::Error;
};

/// The integrator produced a NaN or infinity.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(const std::string& what, double time)
      : Error(what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace quadsmc
