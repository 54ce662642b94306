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

#include "quadsmc/actuation.hpp"

#include <cmath>

#include "quadsmc/errors.hpp"

namespace quadsmc {

ControlVector mix(const RotorSpeeds& w, const QuadParams& p) {
  const double w1 = w.w[0] * w.w[0], w2 = w.w[1] * w.w[1],
               w3 = w.w[2] * w.w[2], w4 = w.w[3] * w.w[3];
  const double kfd = p.KF * p.d;
  return {p.KF * (w1 + w2 + w3 + w4), kfd * (w3 - w1), kfd * (w2 - w4),
          p.KM * (w1 - w2 + w3 - w4)};
}

Allocation allocate(const ControlVector& u, const QuadParams& p) {
  // Closed-form inverse of the mixer:
  //   w1^2 + w2^2 + w3^2 + w4^2 = U1 / KF
  //   w3^2 - w1^2             = U2 / (KF d)
  //   w2^2 - w4^2             = U3 / (KF d)
  //   w1^2 - w2^2 + w3^2 - w4^2 = U4 / KM
  const double total = u.U1 / p.KF;
  const double roll = u.U2 / (p.KF * p.d);
  const double pitch = u.U3 / (p.KF * p.d);
  const double yaw = u.U4 / p.KM;
  const double odd = 0.5 * (total + yaw);   // w1^2 + w3^2
  const double even = 0.5 * (total - yaw);  // w2^2 + w4^2
  const std::array<double, 4> sq = {0.5 * (odd - roll), 0.5 * (even + pitch),
                                    0.5 * (odd + roll), 0.5 * (even - pitch)};
  Allocation a;
  for (std::size_t i = 0; i < 4; ++i) {
    if (sq[i] < 0.0) {
      a.clamped = true;
      a.speeds.w[i] = 0.0;
    } else {
      a.speeds.w[i] = std::sqrt(sq[i]);
    }
  }
  return a;
}

RotorResidual rotor_residual(const RotorSpeeds& w) {
  return {w.w[0] - w.w[1] + w.w[2] - w.w[3]};
}

std::array<double, 4> motor_step_derivative(const MotorState& ms,
                                            const std::array<double, 4>& volts,
                                            const QuadParams& p) {
  std::array<double, 4> dw{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double w = ms.w[i];
    dw[i] = p.b_motor * volts[i] - p.beta0 - p.beta1 * w - p.beta2 * w * w;
  }
  return dw;
}

double steady_voltage_for(double w_target, const QuadParams& p) {
  if (!(w_target >= 0.0)) {
    throw PreconditionError("steady_voltage_for: w_target must be >= 0");
  }
  if (!(p.b_motor != 0.0)) {
    throw PreconditionError("steady_voltage_for: b_motor must be non-zero");
  }
  return (p.beta0 + p.beta1 * w_target + p.beta2 * w_target * w_target) /
         p.b_motor;
}

}  // namespace quadsmc
