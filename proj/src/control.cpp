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

#include "quadsmc/control.hpp"

#include <algorithm>
#include <cmath>

#include "quadsmc/errors.hpp"

namespace quadsmc {

GainSet GainSet::uniform(double alpha, double k, double q) {
  GainSet g;
  g.alpha.fill(alpha);
  g.k.fill(k);
  g.q.fill(q);
  return g;
}

void GainSet::validate() const {
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    if (!std::isfinite(alpha[i]) || !std::isfinite(k[i]) ||
        !std::isfinite(q[i])) {
      throw PreconditionError("GainSet: gains must be finite");
    }
    if (!(alpha[i] > 0.0)) {
      throw PreconditionError("GainSet: alpha must be > 0");
    }
    if (k[i] < 0.0 || q[i] < 0.0) {
      throw PreconditionError("GainSet: k and q must be >= 0");
    }
  }
}

double SwitchingLaw::operator()(double s) const {
  if (kind == SwitchingKind::saturation) {
    return std::clamp(s / epsilon, -1.0, 1.0);
  }
  if (s > 0.0) return 1.0;
  if (s < 0.0) return -1.0;
  return 0.0;
}

TrackingErrors tracking_errors(const State12& s, const ReferencePoint& ref,
                               const GainSet& g) {
  TrackingErrors e;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const std::size_t xi = 2 * i;
    const ChannelReference& r = ref.ch[i];
    e.z[i] = r.value - s[xi];
    e.surfaces.s[i] = s[xi + 1] - r.rate - g.alpha[i] * e.z[i];
  }
  return e;
}

ControlLawOutput control_laws(const State12& s, const ReferencePoint& ref,
                              const TrackingErrors& errors,
                              RotorResidual omega_r, const DerivedConstants& c,
                              const QuadParams& p, const GainSet& g,
                              const SwitchingLaw& sw, bool position_active) {
  const double x2 = s[1], x4 = s[3], x6 = s[5], x8 = s[7], x10 = s[9],
               x12 = s[11];
  const double om = omega_r.value;

  // -q sw(S) - k S for loop i
  auto reach = [&](Channel ch) {
    const auto i = static_cast<std::size_t>(ch);
    const double si = errors.surfaces.s[i];
    return -g.q[i] * sw(si) - g.k[i] * si;
  };
  // rd'' + alpha (rd' - rate) for loop i
  auto track = [&](Channel ch) {
    const auto i = static_cast<std::size_t>(ch);
    const ChannelReference& r = ref.ch[i];
    return r.accel + g.alpha[i] * (r.rate - s[2 * i + 1]);
  };

  ControlLawOutput out;

  const double tilt = std::cos(s[0]) * std::cos(s[2]);
  if (std::abs(tilt) < kThrustSingularityTolerance) {
    throw ThrustSingularityError(
        "control_laws: |cos(phi) cos(theta)| < 1e-3");
  }
  out.u.U1 = p.m / tilt *
             (reach(Channel::z) - c.a11 * x12 + track(Channel::z) + p.g);

  out.u.U2 = (reach(Channel::phi) - c.a1 * x4 * x6 - c.a2 * x2 * x2 -
              c.a3 * om * x4 + track(Channel::phi)) /
             c.b1;
  out.u.U3 = (reach(Channel::theta) - c.a4 * x2 * x6 - c.a5 * x4 * x4 -
              c.a6 * om * x2 + track(Channel::theta)) /
             c.b2;
  out.u.U4 = (reach(Channel::psi) - c.a7 * x2 * x4 - c.a8 * x6 * x6 +
              track(Channel::psi)) /
             c.b3;

  if (position_active) {
    if (std::abs(out.u.U1) < kVirtualControlTolerance) {
      throw VirtualControlSingularityError("control_laws: |U1| < 1e-6");
    }
    const double scale = p.m / out.u.U1;
    out.ux = scale * (reach(Channel::x) - c.a9 * x8 + track(Channel::x));
    out.uy = scale * (reach(Channel::y) - c.a10 * x10 + track(Channel::y));
  }
  return out;
}

AttitudeCommand attitude_from_virtual(double ux, double uy, double psi) {
  AttitudeCommand cmd;
  auto clamp_unit = [&cmd](double v) {
    if (v > 1.0 || v < -1.0) {
      cmd.clamped = true;
      return std::clamp(v, -1.0, 1.0);
    }
    return v;
  };
  const double sp = std::sin(psi), cp = std::cos(psi);
  cmd.phi = std::asin(clamp_unit(ux * sp - uy * cp));
  cmd.theta = std::asin(clamp_unit((ux * cp + uy * sp) / std::cos(cmd.phi)));
  return cmd;
}

Controller::Controller(const QuadParams& params,
                       const DerivedConstants& constants, const GainSet& gains,
                       const ControllerConfig& config)
    : params_(params), constants_(constants), gains_(gains), config_(config) {
  gains_.validate();
  if (config_.switching.kind == SwitchingKind::saturation &&
      !(config_.switching.epsilon > 0.0)) {
    throw PreconditionError("Controller: saturation epsilon must be > 0");
  }
}

ControllerOutput Controller::evaluate(const State12& s, double t,
                                      const ReferencePoint& outer,
                                      RotorResidual omega_r) const {
  ControllerOutput out;
  out.ref = outer;

  if (config_.mode == ControllerMode::attitude) {
    out.errors = tracking_errors(s, out.ref, gains_);
    const ControlLawOutput law =
        control_laws(s, out.ref, out.errors, omega_r, constants_, params_,
                     gains_, config_.switching, false);
    out.u = law.u;
    return out;
  }

  // Outer pass: U1, Ux, Uy from the position loops. The attitude rows of
  // this pass are discarded.
  const TrackingErrors outer_errors = tracking_errors(s, out.ref, gains_);
  const ControlLawOutput position =
      control_laws(s, out.ref, outer_errors, omega_r, constants_, params_,
                   gains_, config_.switching, true);
  out.ux = position.ux;
  out.uy = position.uy;

  const AttitudeCommand cmd = attitude_from_virtual(*out.ux, *out.uy, s.psi());
  out.virtual_clamped = cmd.clamped;

  ChannelReference& phi_ref = out.ref[Channel::phi];
  ChannelReference& theta_ref = out.ref[Channel::theta];
  phi_ref = {cmd.phi, 0.0, 0.0};
  theta_ref = {cmd.theta, 0.0, 0.0};
  if (memory_ && t > memory_->t) {
    const double h = t - memory_->t;
    phi_ref.rate = (cmd.phi - memory_->phi_d) / h;
    theta_ref.rate = (cmd.theta - memory_->theta_d) / h;
  }

  out.errors = tracking_errors(s, out.ref, gains_);
  const ControlLawOutput inner =
      control_laws(s, out.ref, out.errors, omega_r, constants_, params_,
                   gains_, config_.switching, false);
  out.u = {position.u.U1, inner.u.U2, inner.u.U3, inner.u.U4};
  return out;
}

void Controller::commit(double t, const ControllerOutput& out) {
  if (config_.mode != ControllerMode::position) return;
  memory_ = Memory{t, out.ref[Channel::phi].value,
                   out.ref[Channel::theta].value};
}

}  // namespace quadsmc
