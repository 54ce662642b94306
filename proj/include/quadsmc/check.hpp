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

/**
 * @file check.hpp
 * @brief Invariant oracles evaluated against the model a config describes.
 *
 * All samples come from a seeded generator, so a given (config, seed) pair
 * always reports the same numbers.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "quadsmc/config.hpp"
#include "quadsmc/control.hpp"
#include "quadsmc/model.hpp"

namespace quadsmc {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

inline constexpr std::size_t kCheckSamples = 1000;
inline constexpr double kDualFormTolerance = 1e-12;
inline constexpr double kMixerTolerance = 1e-9;
inline constexpr double kRotationTolerance = 1e-12;
/// Relative to 1 + the largest term of the reaching-law identity.
inline constexpr double kReachingTolerance = 1e-10;

/// Max |lumped-form - torque-form| over random states in [-1,1]^12,
/// controls in [-5,5]^4 and rotor residuals in [-50,50].
double dual_form_max_difference(const QuadParams& p, const DerivedConstants& c,
                                std::size_t samples, std::uint64_t seed);

/// Max ||mix(allocate(mix(w))) - mix(w)|| / ||mix(w)|| for w in [0,1000]^4.
double mixer_max_relative_error(const QuadParams& p, std::size_t samples,
                                std::uint64_t seed);

/// Max over random angles of max(|R^T R - I|, |det R - 1|).
double rotation_max_orthonormality_error(std::size_t samples,
                                         std::uint64_t seed);

/// Max relative residual of dS/dt + q sw(S) + k S on the directly actuated
/// loops (phi, theta, psi, z), with dS/dt taken from the model derivative at
/// random states and references.
double reaching_law_max_residual(const QuadParams& p,
                                 const DerivedConstants& c, const GainSet& g,
                                 const SwitchingLaw& sw, std::size_t samples,
                                 std::uint64_t seed);

/// Runs the four oracles on the config's model, gains and switching law.
std::vector<CheckResult> run_checks(const RunConfig& config, std::uint64_t seed);

}  // namespace quadsmc
