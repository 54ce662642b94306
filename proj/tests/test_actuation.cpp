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

#include "quadsmc/actuation.hpp"
#include "quadsmc/errors.hpp"
#include "support.hpp"

using namespace quadsmc;
using quadsmc::testing::reference_params;
using quadsmc::testing::Uniform;

namespace {

/// Positive root of beta2 w^2 + beta1 w + (beta0 - b V) = 0 by bisection.
double steady_speed(double volts, const QuadParams& p) {
  auto f = [&](double w) {
    return p.b_motor * volts - p.beta0 - p.beta1 * w - p.beta2 * w * w;
  };
  double lo = 0.0, hi = 1e4;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("mixer on symmetric and zero speeds") {
  const QuadParams p = reference_params();
  const double w = 200.0;
  const ControlVector u = mix(RotorSpeeds{{w, w, w, w}}, p);
  CHECK(u.U1 == doctest::Approx(4 * p.KF * w * w));
  CHECK(u.U2 == 0.0);
  CHECK(u.U3 == 0.0);
  CHECK(u.U4 == 0.0);
  CHECK(mix(RotorSpeeds{}, p) == ControlVector{});
}

TEST_CASE("mixer row signs") {
  const QuadParams p = reference_params();
  CHECK(mix(RotorSpeeds{{0, 0, 100, 0}}, p).U2 > 0);
  CHECK(mix(RotorSpeeds{{0, 100, 0, 0}}, p).U3 > 0);
  CHECK(mix(RotorSpeeds{{100, 0, 0, 0}}, p).U4 > 0);
}

TEST_CASE("allocation inverts the mixer") {
  const QuadParams p = reference_params();
  const double w = 200.0;
  const Allocation a = allocate(ControlVector{4 * p.KF * w * w, 0, 0, 0}, p);
  for (double v : a.speeds.w) CHECK(v == doctest::Approx(w));
  CHECK_FALSE(a.clamped);
  CHECK(allocate(ControlVector{}, p).speeds == RotorSpeeds{});

  Uniform u(5);
  for (int n = 0; n < 1000; ++n) {
    RotorSpeeds gen;
    for (double& v : gen.w) v = u(0, 1000);
    const Allocation back = allocate(mix(gen, p), p);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(back.speeds.w[i] - gen.w[i]) < 1e-9 * (1 + gen.w[i]));
    }
  }
}

TEST_CASE("infeasible commands are clamped and flagged") {
  const QuadParams p = reference_params();
  const Allocation a = allocate(ControlVector{0.0, 1.0, 0, 0}, p);
  CHECK(a.clamped);
  for (double v : a.speeds.w) CHECK(v >= 0.0);
}

TEST_CASE("rotor residual") {
  CHECK(rotor_residual(RotorSpeeds{{4, 3, 2, 1}}).value == 2.0);
}

TEST_CASE("motor model") {
  const QuadParams p = reference_params();
  const double w10 = steady_speed(10.0, p);
  CHECK(w10 == doctest::Approx(276.8).epsilon(5e-4));
  const auto d = motor_step_derivative(RotorSpeeds{{w10, w10, w10, w10}},
                                       {10, 10, 10, 10}, p);
  for (double v : d) CHECK(std::abs(v) < 1e-9);

  const double v0 = p.beta0 / p.b_motor;
  const auto rest = motor_step_derivative(RotorSpeeds{}, {v0, v0, v0, v0}, p);
  for (double v : rest) CHECK(std::abs(v) < 1e-12);

  const auto coast =
      motor_step_derivative(RotorSpeeds{{900, 900, 900, 900}}, {0, 0, 0, 0}, p);
  for (double v : coast) CHECK(v < 0);
}

TEST_CASE("steady voltage") {
  const QuadParams p = reference_params();
  CHECK(steady_voltage_for(0.0, p) == doctest::Approx(0.6768).epsilon(1e-4));
  CHECK(steady_voltage_for(steady_speed(10.0, p), p) == doctest::Approx(10.0));
  CHECK_THROWS_AS(steady_voltage_for(-1.0, p), PreconditionError);
}
