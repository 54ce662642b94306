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

#include "quadsmc/dynamics.hpp"
#include "quadsmc/model.hpp"

namespace quadsmc {

/// Rotor angular speeds w1..w4 [rad/s], all >= 0.
struct RotorSpeeds {
  std::array<double, 4> w{};

  friend bool operator==(const RotorSpeeds&, const RotorSpeeds&) = default;
};

/// Motor state carried by the integrator in motor actuation mode.
using MotorState = RotorSpeeds;

struct Allocation {
  RotorSpeeds speeds;
  bool clamped = false;  ///< some requested w_i^2 was negative
};

enum class ActuationMode { ideal, motor };

/// U = M (w1^2, w2^2, w3^2, w4^2) with rows
///   thrust: KF KF KF KF
///   roll:  -KF d, 0, KF d, 0
///   pitch:  0, KF d, 0, -KF d
///   yaw:    KM, -KM, KM, -KM
ControlVector mix(const RotorSpeeds& w, const QuadParams& p);

/// Exact inverse of mix(). Negative squared speeds are clamped to zero and
/// reported through Allocation::clamped.
Allocation allocate(const ControlVector& u, const QuadParams& p);

/// w1 - w2 + w3 - w4.
RotorResidual rotor_residual(const RotorSpeeds& w);

/// Per-rotor w' = b V - beta0 - beta1 w - beta2 w^2.
std::array<double, 4> motor_step_derivative(const MotorState& ms,
                                            const std::array<double, 4>& volts,
                                            const QuadParams& p);

/// Voltage holding a rotor at `w_target` in steady state.
double steady_voltage_for(double w_target, const QuadParams& p);

}  // namespace quadsmc
