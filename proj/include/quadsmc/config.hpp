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
 * @file config.hpp
 * @brief The JSON run document: one file describes a complete experiment.
 *
 * Schema (unknown keys anywhere are rejected):
 *
 *     name, description        optional strings
 *     params                   all QuadParams fields, required
 *     gains                    alpha, k, q: number or array of 6
 *                              (order phi, theta, psi, x, y, z)
 *     trajectory               per channel {type: zero|constant|ramp|sine, ...};
 *                              missing channels are zero
 *     sim                      dt, t_end, stride, initial_state[12]
 *     actuation                "ideal" | "motor"
 *     controller               mode, switching, epsilon
 *     constants                optional overrides of a1..a11, b1..b3
 *     output                   {dir}
 *     tune                     budget, seed, free, uniform, lower, upper,
 *                              channels, selftest
 */

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadsmc/control.hpp"
#include "quadsmc/model.hpp"
#include "quadsmc/sim.hpp"
#include "quadsmc/trajectory.hpp"
#include "quadsmc/tune.hpp"

namespace quadsmc {

struct TuneSettings {
  std::size_t budget = 200;
  std::uint64_t seed = 0;
  std::vector<GainGroup> free = {GainGroup::alpha, GainGroup::k, GainGroup::q};
  bool uniform = true;
  double lower = 0.0;
  double upper = 1000.0;
  /// Empty means the controller mode's default channel set.
  std::vector<Channel> channels;
  /// Minimise (g - 5)^2 on [lower, upper] instead of a rollout cost.
  bool selftest = false;
};

struct RunConfig {
  std::string name;
  std::string description;
  QuadParams params;
  GainSet gains;
  TrajectorySpec trajectory;
  SimConfig sim;
  /// Lumped constants to replace after derivation, keyed "a1".."b3".
  std::map<std::string, double> constant_overrides;
  std::optional<std::string> output_dir;
  TuneSettings tune;

  /// derive_constants(params) with the overrides applied.
  DerivedConstants constants() const;
};

/// Parses and validates a run document. Throws ConfigError.
RunConfig parse_config(const std::string& json_text);

/// Reads and parses a file. Throws ConfigError (including when unreadable).
RunConfig load_config(const std::string& path);

/// Gain-tuning problem described by the document's tune block.
TuneProblem make_tune_problem(const RunConfig& config);

/// Names accepted in the constants block.
const std::vector<std::string>& constant_names();

}  // namespace quadsmc
