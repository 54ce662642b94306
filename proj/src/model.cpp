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

#include "quadsmc/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(std::string("QuadParams: ") + what);
}

}  // namespace

void QuadParams::validate() const {
  const double all[] = {m,    d,    g,    Ix,   Iy,   Iz,    Jr,
                        Kfax, Kfay, Kfaz, Kftx, Kfty, Kftz,  KF,
                        KM,   beta0, beta1, beta2, b_motor};
  require(std::all_of(std::begin(all), std::end(all),
                      [](double x) { return std::isfinite(x); }),
          "all parameters must be finite");
  require(m > 0.0, "m must be > 0");
  require(d > 0.0, "d must be > 0");
  require(Ix > 0.0 && Iy > 0.0 && Iz > 0.0, "inertias must be > 0");
  require(Jr >= 0.0, "Jr must be >= 0");
  require(Kfax >= 0.0 && Kfay >= 0.0 && Kfaz >= 0.0,
          "aerodynamic friction coefficients must be >= 0");
  require(Kftx >= 0.0 && Kfty >= 0.0 && Kftz >= 0.0,
          "translational drag coefficients must be >= 0");
  require(KF > 0.0, "KF must be > 0");
  require(KM > 0.0, "KM must be > 0");
  require(b_motor > 0.0, "b_motor must be > 0");
  require(beta0 >= 0.0 && beta1 >= 0.0 && beta2 >= 0.0,
          "motor friction coefficients must be >= 0");
}

bool State12::finite() const {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

bool ControlVector::finite() const {
  return std::isfinite(U1) && std::isfinite(U2) && std::isfinite(U3) &&
         std::isfinite(U4);
}

DerivedConstants derive_constants(const QuadParams& p) {
  p.validate();
  DerivedConstants c;
  c.a1 = (p.Iy - p.Iz) / p.Ix;
  c.a2 = -p.Kfax / p.Ix;
  c.a3 = -p.Jr / p.Ix;
  c.a4 = (p.Iz - p.Ix) / p.Iy;
  c.a5 = -p.Kfay / p.Iy;
  c.a6 = p.Jr / p.Iy;
  c.a7 = (p.Ix - p.Iy) / p.Iz;
  c.a8 = -p.Kfaz / p.Iz;
  c.a9 = -p.Kftx / p.m;
  c.a10 = -p.Kfty / p.m;
  c.a11 = -p.Kftz / p.m;
  c.b1 = p.d / p.Ix;
  c.b2 = p.d / p.Iy;
  c.b3 = 1.0 / p.Iz;
  return c;
}

Eigen::Matrix3d rotation_matrix(double phi, double theta, double psi) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(psi), sp = std::sin(psi);
  Eigen::Matrix3d r;
  r << ct * cp, sf * st * cp - cf * sp, cf * st * cp + sf * sp,  //
      ct * sp, sf * st * sp + cf * cp, cf * st * sp - sf * cp,   //
      -st, sf * ct, cf * ct;
  return r;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d s;
  s << 0.0, -w.z(), w.y(),  //
      w.z(), 0.0, -w.x(),   //
      -w.y(), w.x(), 0.0;
  return s;
}

Eigen::Matrix3d body_rate_map(double phi, double theta) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  Eigen::Matrix3d w;
  w << 1.0, 0.0, -st,  //
      0.0, cf, ct * sf,  //
      0.0, -sf, ct * cf;
  return w;
}

Eigen::Matrix3d euler_rate_map(double phi, double theta) {
  const double ct = std::cos(theta);
  if (std::abs(ct) <= kGimbalLockTolerance) {
    throw GimbalLockError("euler_rate_map: |cos(theta)| <= 1e-6");
  }
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double tt = std::tan(theta);
  Eigen::Matrix3d e;
  e << 1.0, sf * tt, cf * tt,  //
      0.0, cf, -sf,             //
      0.0, sf / ct, cf / ct;
  return e;
}

}  // namespace quadsmc
