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

#include "quadsmc/model.hpp"

namespace quadsmc {

/// Signed rotor-speed residual w1 - w2 + w3 - w4 [rad/s].
struct RotorResidual {
  double value = 0.0;
};

/// Free-space closed-form derivative written with the lumped constants.
/// Ux, Uy are formed from the current attitude. No saturation, no ground.
StateRate state_derivative(const State12& s, const ControlVector& u,
                           RotorResidual omega_r, const DerivedConstants& c,
                           const QuadParams& p);

/// Same derivative assembled from the raw parameters (force and torque
/// balance form). Used as the independent check on state_derivative.
StateRate torque_form_derivative(const State12& s, const ControlVector& u,
                                 RotorResidual omega_r, const QuadParams& p);

}  // namespace quadsmc
