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
 * @file report.hpp
 * @brief Serialisation of runs: CSV log, metrics JSON, tuner outputs, SVG.
 *
 * Every writer is deterministic. Numbers are printed in shortest round-trip
 * form, so equal doubles always give equal bytes.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadsmc/config.hpp"
#include "quadsmc/sim.hpp"
#include "quadsmc/tune.hpp"

namespace quadsmc {

/// Frozen column contract of log.csv.
inline constexpr std::string_view kCsvHeader =
    "t,phi,phi_dot,theta,theta_dot,psi,psi_dot,x,x_dot,y,y_dot,z,z_dot,"
    "phi_d,theta_d,psi_d,x_d,y_d,z_d,U1,U2,U3,U4,"
    "S_phi,S_theta,S_psi,S_x,S_y,S_z,e_phi,e_theta,e_psi,e_x,e_y,e_z";

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Header line plus one line per row, '\n' terminated.
std::string log_csv(const SimLog& log);

/// Per-channel metrics plus run status, as pretty-printed JSON.
std::string metrics_json(const SimLog& log,
                         const std::optional<SimFailure>& failure,
                         const RunConfig& config);

/// Channels with a dedicated plot for a controller mode.
std::vector<Channel> plotted_channels(ControllerMode mode);

/// Desired vs obtained (top panel) and tracking error (bottom panel).
std::string channel_svg(const SimLog& log, Channel channel);

/// Isometric projection of the desired and flown 3-D paths.
std::string trajectory_3d_svg(const SimLog& log);

/// Evaluation trace: index, tuned coordinates, value, running best.
std::string trace_csv(const std::vector<EvaluationRecord>& trace,
                      const std::vector<std::string>& names);

/// Tuned gains with the baseline and best objective.
std::string best_gains_json(const TuneResult& result, const TuneProblem& problem,
                            std::size_t budget, std::uint64_t seed);

/// Result of the quadratic self-test run of the optimiser.
std::string selftest_json(const OptimizeResult& result, std::size_t budget,
                          std::uint64_t seed);

}  // namespace quadsmc
