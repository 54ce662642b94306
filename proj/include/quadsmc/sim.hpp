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

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quadsmc/actuation.hpp"
#include "quadsmc/control.hpp"
#include "quadsmc/errors.hpp"
#include "quadsmc/model.hpp"
#include "quadsmc/trajectory.hpp"

namespace quadsmc {

/// Classical fourth-order Runge-Kutta step of y' = f(t, y).
/// Throws NonFiniteStateError (stamped t + dt) if the result is not finite.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t,
                               double dt) {
  if (!(dt > 0.0)) throw PreconditionError("rk4_step: dt must be > 0");
  auto axpy = [](const std::array<double, N>& a, double h,
                 const std::array<double, N>& b) {
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + h * b[i];
    return r;
  };
  const std::array<double, N> k1 = f(t, y);
  const std::array<double, N> k2 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
  const std::array<double, N> k3 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
  const std::array<double, N> k4 = f(t + dt, axpy(y, dt, k3));
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(out[i])) {
      throw NonFiniteStateError("rk4_step: non-finite state component",
                                t + dt);
    }
  }
  return out;
}

struct SimConfig {
  double dt = 1e-3;
  double t_end = 10.0;
  std::size_t stride = 1;  ///< log every stride-th step
  State12 initial_state;
  ActuationMode actuation = ActuationMode::ideal;
  ControllerConfig controller;

  /// dt > 0, t_end >= dt, stride >= 1, finite initial state.
  void validate() const;

  /// Number of integration steps covering [0, t_end].
  std::size_t steps() const;
};

/// One logged sample.
struct LogRow {
  double t = 0.0;
  State12 state;
  ReferencePoint ref;
  ControlVector u;  ///< commanded control
  SlidingSurfaces surfaces;
  std::array<double, kChannelCount> errors{};  ///< ref.value - value
  RotorSpeeds rotors;
  RotorResidual omega_r;  ///< residual the controller and model used
  /// Backstepping diagnostics (z_odd^2 / 2 + S^2) / 2 per loop.
  std::array<double, kChannelCount> lyapunov{};
  std::optional<double> ux;
  std::optional<double> uy;
  bool allocation_clamped = false;
  bool virtual_clamped = false;
};

struct SimLog {
  std::vector<LogRow> rows;
};

enum class FailureKind { non_finite, thrust_singularity, virtual_singularity };

struct SimFailure {
  FailureKind kind;
  double time;
  std::string message;
};

/// A rollout together with the reason it stopped early, if it did.
struct SimResult {
  SimLog log;
  std::optional<SimFailure> failure;
};

/// Closed-loop rollout that keeps the partial log on divergence.
SimResult simulate(const SimConfig& config, const QuadParams& params,
                   const GainSet& gains, const TrajectorySpec& traj);

/// Same with explicit constants (for injected-fault checks).
SimResult simulate(const SimConfig& config, const QuadParams& params,
                   const DerivedConstants& constants, const GainSet& gains,
                   const TrajectorySpec& traj);

/// Closed-loop rollout; rethrows the failure (NonFiniteStateError carries
/// the failing time).
SimLog run(const SimConfig& config, const QuadParams& params,
           const GainSet& gains, const TrajectorySpec& traj);

struct ChannelMetrics {
  double ise = 0.0;
  double final_abs_error = 0.0;
  double max_abs_error = 0.0;
  /// Earliest time after which |e| stays within 5% of the trajectory scale
  /// max(1, peak |ref|). Empty if the last sample is outside the band.
  std::optional<double> settling_time;
};

struct Metrics {
  std::array<ChannelMetrics, kChannelCount> channels{};

  const ChannelMetrics& operator[](Channel c) const {
    return channels[static_cast<std::size_t>(c)];
  }
};

inline constexpr double kSettlingBand = 0.05;

/// Per-channel ISE (left rectangle rule), final/max error, settling time.
Metrics metrics(const SimLog& log);

}  // namespace quadsmc
