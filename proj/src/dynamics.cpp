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

#include "quadsmc/dynamics.hpp"

#include <cmath>

namespace quadsmc {

StateRate state_derivative(const State12& s, const ControlVector& u,
                           RotorResidual omega_r, const DerivedConstants& c,
                           const QuadParams& p) {
  const double x1 = s[0], x2 = s[1], x3 = s[2], x4 = s[3], x5 = s[4],
               x6 = s[5], x8 = s[7], x10 = s[9], x12 = s[11];
  const double om = omega_r.value;

  const double c1 = std::cos(x1), s1 = std::sin(x1);
  const double c3 = std::cos(x3), s3 = std::sin(x3);
  const double c5 = std::cos(x5), s5 = std::sin(x5);
  const double ux = c1 * s3 * c5 + s1 * s5;
  const double uy = c1 * s3 * s5 - s1 * c5;

  StateRate r;
  r[0] = x2;
  r[1] = c.a1 * x4 * x6 + c.a2 * x2 * x2 + c.a3 * om * x4 + c.b1 * u.U2;
  r[2] = x4;
  r[3] = c.a4 * x2 * x6 + c.a5 * x4 * x4 + c.a6 * om * x2 + c.b2 * u.U3;
  r[4] = x6;
  r[5] = c.a7 * x2 * x4 + c.a8 * x6 * x6 + c.b3 * u.U4;
  r[6] = x8;
  r[7] = c.a9 * x8 + ux * u.U1 / p.m;
  r[8] = x10;
  r[9] = c.a10 * x10 + uy * u.U1 / p.m;
  r[10] = x12;
  r[11] = c.a11 * x12 + u.U1 * c1 * c3 / p.m - p.g;
  return r;
}

StateRate torque_form_derivative(const State12& s, const ControlVector& u,
                                 RotorResidual omega_r, const QuadParams& p) {
  const double phi = s.phi(), theta = s.theta(), psi = s.psi();
  const double dphi = s.phi_dot(), dtheta = s.theta_dot(), dpsi = s.psi_dot();
  const double dx = s[StateIndex::x_dot], dy = s[StateIndex::y_dot],
               dz = s[StateIndex::z_dot];
  const double om = omega_r.value;

  // Thrust direction is the third column of the body-to-inertial rotation.
  const Eigen::Vector3d thrust_axis =
      rotation_matrix(phi, theta, psi).col(2);

  StateRate r;
  r[0] = dphi;
  r[1] = (dtheta * dpsi * (p.Iy - p.Iz) - p.Jr * om * dtheta + p.d * u.U2 -
          p.Kfax * dphi * dphi) /
         p.Ix;
  r[2] = dtheta;
  r[3] = (dphi * dpsi * (p.Iz - p.Ix) + p.Jr * om * dphi + p.d * u.U3 -
          p.Kfay * dtheta * dtheta) /
         p.Iy;
  r[4] = dpsi;
  r[5] = (dphi * dtheta * (p.Ix - p.Iy) + u.U4 - p.Kfaz * dpsi * dpsi) / p.Iz;
  r[6] = dx;
  r[7] = (u.U1 * thrust_axis.x() - p.Kftx * dx) / p.m;
  r[8] = dy;
  r[9] = (u.U1 * thrust_axis.y() - p.Kfty * dy) / p.m;
  r[10] = dz;
  r[11] = (u.U1 * thrust_axis.z() - p.Kftz * dz) / p.m - p.g;
  return r;
}

}  // namespace quadsmc
