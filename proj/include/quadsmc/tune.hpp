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
 * @file tune.hpp
 * @brief Box-constrained Nelder-Mead and the gain-tuning problem built on it.
 *
 * The simplex method needs no gradients, which matters here: with sign()
 * switching the tracking cost is not differentiable in the gains.
 */

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "quadsmc/control.hpp"
#include "quadsmc/model.hpp"
#include "quadsmc/sim.hpp"
#include "quadsmc/trajectory.hpp"

namespace quadsmc {

/// Cost assigned to rollouts that diverge or hit a singularity.
inline constexpr double kDivergencePenalty = 1e12;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  std::vector<double> project(std::vector<double> x) const;
  bool contains(std::span<const double> x) const;
};

struct NelderMeadOptions {
  std::size_t budget = 200;  ///< maximum objective evaluations
  std::uint64_t seed = 0;
  double spread = 0.1;       ///< initial simplex edge, relative to |x0_i|
  unsigned threads = 1;      ///< concurrent evaluations in batch phases
  double x_tolerance = 1e-10;
  double f_tolerance = 1e-14;
};

struct EvaluationRecord {
  std::size_t index = 0;
  std::vector<double> point;
  double value = 0.0;
  double best_so_far = 0.0;
};

struct OptimizeResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::vector<EvaluationRecord> trace;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimises `f` over `box` starting from a simplex around `x0`.
///
/// The seed only chooses the direction of each initial simplex edge (and of
/// restart simplices), so the result is a function of (f, x0, box, options).
/// Every evaluated point lies inside the box. The simplex restarts around the
/// incumbent when it collapses and budget remains.
///
/// Requires budget >= dimension + 1.
OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const Box& box, const NelderMeadOptions& options);

enum class GainGroup { alpha, k, q };

/// Gain tuning against the tracking cost of one scenario.
struct TuneProblem {
  SimConfig sim;
  QuadParams params;
  DerivedConstants constants;
  TrajectorySpec trajectory;
  GainSet base;  ///< start point; also fixes every component that is not free
  std::vector<GainGroup> free = {GainGroup::alpha, GainGroup::k, GainGroup::q};
  /// One shared scalar per free group, or one value per loop.
  bool uniform = true;
  double lower = 0.0;
  double upper = 1000.0;
  /// Channels whose ISE is summed (unit weights).
  std::array<bool, kChannelCount> channels{};

  void validate() const;
  std::size_t dimension() const;
  Box box() const;
  std::vector<double> encode(const GainSet& g) const;
  GainSet decode(std::span<const double> x) const;
};

/// Channels tracked in closed loop by a controller mode.
std::array<bool, kChannelCount> default_objective_channels(ControllerMode mode);

/// Smallest alpha the tuner will evaluate; alpha must stay positive.
inline constexpr double kMinTunedAlpha = 1e-6;

/// Summed ISE over the problem's channels, or kDivergencePenalty if the
/// rollout fails. Throws PreconditionError if a free gain is out of bounds.
double objective(const GainSet& gains, const TuneProblem& problem);

/// Summed ISE of one log over the selected channels.
double tracking_cost(const SimLog& log,
                     const std::array<bool, kChannelCount>& channels);

struct TuneResult {
  GainSet best;
  double best_objective = 0.0;
  double baseline_objective = 0.0;  ///< objective at problem.base
  std::vector<EvaluationRecord> trace;
};

TuneResult optimize(const TuneProblem& problem, std::size_t budget,
                    std::uint64_t seed, unsigned threads = 1);

/// Column names of the tuned vector, e.g. "alpha" or "k_theta".
std::vector<std::string> parameter_names(const TuneProblem& problem);

}  // namespace quadsmc
