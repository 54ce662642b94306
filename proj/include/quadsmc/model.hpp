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
 * @file model.hpp
 * @brief Vehicle parameters, the 12-component state, lumped model constants
 * and attitude kinematics.
 *
 * All angles are radians. The rotation matrix maps body to inertial frame
 * using the ZYX (yaw-pitch-roll) Euler convention.
 */

#include <array>
#include <cstddef>

#include <Eigen/Core>

namespace quadsmc {

/// Physical constants of the airframe and its rotors.
struct QuadParams {
  double m = 0.0;   ///< mass [kg]
  double d = 0.0;   ///< arm length [m]
  double g = 0.0;   ///< gravity [m/s^2]
  double Ix = 0.0;  ///< principal inertias [kg m^2]
  double Iy = 0.0;
  double Iz = 0.0;
  double Jr = 0.0;  ///< rotor inertia
  double Kfax = 0.0;  ///< aerodynamic friction torque coefficients
  double Kfay = 0.0;
  double Kfaz = 0.0;
  double Kftx = 0.0;  ///< translational drag coefficients
  double Kfty = 0.0;
  double Kftz = 0.0;
  double KF = 0.0;  ///< thrust coefficient [N s^2]
  double KM = 0.0;  ///< drag-torque coefficient [N m s^2]
  double beta0 = 0.0;  ///< motor model: w' = b V - beta0 - beta1 w - beta2 w^2
  double beta1 = 0.0;
  double beta2 = 0.0;
  double b_motor = 0.0;

  /// Throws PreconditionError naming the first violated invariant.
  void validate() const;
};

/// Lumped constants of the state-space model.
struct DerivedConstants {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0, a6 = 0.0;
  double a7 = 0.0, a8 = 0.0, a9 = 0.0, a10 = 0.0, a11 = 0.0;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0;
};

/// Component order of State12. Frozen: it is also the CSV column order.
enum class StateIndex : std::size_t {
  phi = 0,
  phi_dot,
  theta,
  theta_dot,
  psi,
  psi_dot,
  x,
  x_dot,
  y,
  y_dot,
  z,
  z_dot,
};

inline constexpr std::size_t kStateSize = 12;

/// (phi, phi', theta, theta', psi, psi', x, x', y, y', z, z').
struct State12 {
  std::array<double, kStateSize> v{};

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  double& operator[](StateIndex i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](StateIndex i) const {
    return v[static_cast<std::size_t>(i)];
  }

  double phi() const { return v[0]; }
  double phi_dot() const { return v[1]; }
  double theta() const { return v[2]; }
  double theta_dot() const { return v[3]; }
  double psi() const { return v[4]; }
  double psi_dot() const { return v[5]; }

  bool finite() const;

  friend bool operator==(const State12&, const State12&) = default;
};

/// Time derivative of a State12; same layout.
using StateRate = State12;

/// (U1, U2, U3, U4): thrust [N] and the three torque channels.
struct ControlVector {
  double U1 = 0.0;
  double U2 = 0.0;
  double U3 = 0.0;
  double U4 = 0.0;

  bool finite() const;

  friend bool operator==(const ControlVector&, const ControlVector&) = default;
};

/// Validates `p` and computes the lumped constants. a8 uses Kfaz.
DerivedConstants derive_constants(const QuadParams& p);

/// Body-to-inertial rotation, R = Rz(psi) Ry(theta) Rx(phi).
Eigen::Matrix3d rotation_matrix(double phi, double theta, double psi);

/// Matrix form of the cross product: skew(w) * v == w x v.
Eigen::Matrix3d skew(const Eigen::Vector3d& omega);

/// Euler-angle rates to body rates (p, q, r).
Eigen::Matrix3d body_rate_map(double phi, double theta);

inline constexpr double kGimbalLockTolerance = 1e-6;

/// Body rates to Euler-angle rates; throws GimbalLockError when
/// |cos(theta)| <= kGimbalLockTolerance.
Eigen::Matrix3d euler_rate_map(double phi, double theta);

}  // namespace quadsmc
