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

#include <doctest.h>

#include <cmath>

#include <Eigen/Geometry>

#include "quadsmc/errors.hpp"
#include "quadsmc/model.hpp"
#include "support.hpp"

using namespace quadsmc;
using quadsmc::testing::reference_params;
using quadsmc::testing::Uniform;

TEST_CASE("lumped constants from the reference airframe") {
  const DerivedConstants c = derive_constants(reference_params());
  CHECK(c.a1 == doctest::Approx(-0.97649).epsilon(1e-5));
  CHECK(c.a7 == doctest::Approx(-1.3216e-4).epsilon(1e-4));
  const QuadParams p = reference_params();
  CHECK(c.a2 == doctest::Approx(-p.Kfax / p.Ix));
  CHECK(c.a3 == doctest::Approx(-p.Jr / p.Ix));
  CHECK(c.a6 == doctest::Approx(p.Jr / p.Iy));
  // Yaw friction uses the rotational coefficient, not the translational one.
  CHECK(c.a8 == doctest::Approx(-p.Kfaz / p.Iz));
  CHECK(c.a11 == doctest::Approx(-p.Kftz / p.m));
  CHECK(c.b1 == doctest::Approx(p.d / p.Ix));
  CHECK(c.b3 == doctest::Approx(1.0 / p.Iz));
}

TEST_CASE("symmetric inertia cancels the coupling constants") {
  QuadParams p = reference_params();
  p.Ix = p.Iy = p.Iz = 4e-3;
  const DerivedConstants c = derive_constants(p);
  CHECK(c.a1 == 0.0);
  CHECK(c.a4 == 0.0);
  CHECK(c.a7 == 0.0);
}

TEST_CASE("invalid parameters are rejected") {
  QuadParams p = reference_params();
  p.m = 0.0;
  CHECK_THROWS_AS(derive_constants(p), PreconditionError);
  p = reference_params();
  p.Iz = std::nan("");
  CHECK_THROWS_AS(derive_constants(p), PreconditionError);
  p = reference_params();
  p.KF = -1.0;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
}

TEST_CASE("rotation matrix") {
  CHECK(rotation_matrix(0, 0, 0).isApprox(Eigen::Matrix3d::Identity()));

  const Eigen::Matrix3d r = rotation_matrix(M_PI / 2, 0, 0);
  CHECK(r(0, 2) == doctest::Approx(0.0));
  CHECK(r(1, 2) == doctest::Approx(-1.0));
  CHECK(r(2, 2) == doctest::Approx(0.0).epsilon(1e-15));

  Uniform u(7);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Matrix3d m =
        rotation_matrix(u(-M_PI, M_PI), u(-M_PI, M_PI), u(-M_PI, M_PI));
    CHECK((m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("rotation composes yaw, pitch, roll") {
  const double f = 0.3, t = -0.4, s = 1.1;
  const Eigen::Matrix3d expected =
      (Eigen::AngleAxisd(s, Eigen::Vector3d::UnitZ()) *
       Eigen::AngleAxisd(t, Eigen::Vector3d::UnitY()) *
       Eigen::AngleAxisd(f, Eigen::Vector3d::UnitX()))
          .toRotationMatrix();
  CHECK((rotation_matrix(f, t, s) - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("skew matrix") {
  CHECK(skew(Eigen::Vector3d::Zero()).isZero());
  Eigen::Matrix3d ex;
  ex << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  CHECK(skew(Eigen::Vector3d(1, 0, 0)) == ex);

  Uniform u(11);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d w(u(-3, 3), u(-3, 3), u(-3, 3));
    const Eigen::Vector3d v(u(-3, 3), u(-3, 3), u(-3, 3));
    const Eigen::Vector3d cross(w.y() * v.z() - w.z() * v.y(),
                                w.z() * v.x() - w.x() * v.z(),
                                w.x() * v.y() - w.y() * v.x());
    CHECK((skew(w) * v - cross).norm() < 1e-14);
  }
}

TEST_CASE("euler-rate map inverts the body-rate map") {
  CHECK(euler_rate_map(0, 0).isApprox(Eigen::Matrix3d::Identity()));
  Uniform u(3);
  for (int i = 0; i < 200; ++i) {
    const double f = u(-M_PI, M_PI), t = u(-1.5, 1.5);
    const Eigen::Matrix3d prod = euler_rate_map(f, t) * body_rate_map(f, t);
    CHECK((prod - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(euler_rate_map(0.0, M_PI / 2 - 1e-12), GimbalLockError);
}

TEST_CASE("state indexing follows the frozen order") {
  State12 s;
  for (std::size_t i = 0; i < kStateSize; ++i) s[i] = static_cast<double>(i);
  CHECK(s[StateIndex::phi] == 0);
  CHECK(s.theta() == 2);
  CHECK(s.psi_dot() == 5);
  CHECK(s[StateIndex::z_dot] == 11);
  CHECK(s.finite());
  s[3] = INFINITY;
  CHECK_FALSE(s.finite());
}
