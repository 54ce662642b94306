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

#include "quadsmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "quadsmc/dynamics.hpp"

namespace quadsmc {

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw PreconditionError("SimConfig: dt must be > 0");
  }
  if (!(t_end >= dt) || !std::isfinite(t_end)) {
    throw PreconditionError("SimConfig: t_end must be >= dt");
  }
  if (stride < 1) throw PreconditionError("SimConfig: stride must be >= 1");
  if (!initial_state.finite()) {
    throw PreconditionError("SimConfig: initial state must be finite");
  }
}

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
}

namespace {

constexpr int kResidualIterations = 50;
constexpr double kResidualTolerance = 1e-12;

struct Evaluation {
  ControllerOutput ctrl;
  RotorSpeeds rotors;
  RotorResidual omega_r;
  bool allocation_clamped = false;
};

/// Plant + controller + actuation, evaluated at one instant.
class ClosedLoop {
 public:
  ClosedLoop(const SimConfig& config, const QuadParams& params,
             const DerivedConstants& constants, const GainSet& gains,
             const TrajectorySpec& traj)
      : params_(params),
        constants_(constants),
        traj_(traj),
        controller_(params, constants, gains, config.controller) {}

  /// Ideal actuation: the rotor residual depends on U through allocation and
  /// U depends on the residual through the gyroscopic terms. Iterate to the
  /// consistent pair; the returned control was computed with the returned
  /// residual.
  Evaluation evaluate_ideal(const State12& s, double t) const {
    const ReferencePoint ref = sample(traj_, t);
    Evaluation ev;
    double omega = 0.0;
    for (int it = 0; it < kResidualIterations; ++it) {
      ev.ctrl = controller_.evaluate(s, t, ref, RotorResidual{omega});
      const Allocation alloc = allocate(ev.ctrl.u, params_);
      ev.rotors = alloc.speeds;
      ev.allocation_clamped = alloc.clamped;
      ev.omega_r = RotorResidual{omega};
      const double next = rotor_residual(alloc.speeds).value;
      if (std::abs(next - omega) <=
          kResidualTolerance * (1.0 + std::abs(omega))) {
        break;
      }
      omega = next;
    }
    return ev;
  }

  Evaluation evaluate_motor(const State12& s, const RotorSpeeds& w,
                            double t) const {
    Evaluation ev;
    ev.rotors = w;
    ev.omega_r = rotor_residual(w);
    ev.ctrl = controller_.evaluate(s, t, sample(traj_, t), ev.omega_r);
    return ev;
  }

  StateRate vehicle_rate(const State12& s, const ControlVector& applied,
                         RotorResidual omega_r) const {
    return state_derivative(s, applied, omega_r, constants_, params_);
  }

  std::array<double, 4> motor_rate(const RotorSpeeds& w,
                                   const ControlVector& command,
                                   bool* clamped) const {
    const Allocation target = allocate(command, params_);
    if (clamped != nullptr) *clamped = target.clamped;
    std::array<double, 4> volts{};
    for (std::size_t i = 0; i < 4; ++i) {
      volts[i] = steady_voltage_for(target.speeds.w[i], params_);
    }
    return motor_step_derivative(w, volts, params_);
  }

  const QuadParams& params() const { return params_; }
  Controller& controller() { return controller_; }

 private:
  const QuadParams& params_;
  const DerivedConstants& constants_;
  const TrajectorySpec& traj_;
  Controller controller_;
};

LogRow make_row(double t, const State12& s, const Evaluation& ev) {
  LogRow row;
  row.t = t;
  row.state = s;
  row.ref = ev.ctrl.ref;
  row.u = ev.ctrl.u;
  row.surfaces = ev.ctrl.errors.surfaces;
  row.errors = ev.ctrl.errors.z;
  row.rotors = ev.rotors;
  row.omega_r = ev.omega_r;
  row.ux = ev.ctrl.ux;
  row.uy = ev.ctrl.uy;
  row.allocation_clamped = ev.allocation_clamped;
  row.virtual_clamped = ev.ctrl.virtual_clamped;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const double v_odd = 0.5 * ev.ctrl.errors.z[i] * ev.ctrl.errors.z[i];
    const double si = ev.ctrl.errors.surfaces.s[i];
    row.lyapunov[i] = 0.5 * (v_odd + si * si);
  }
  return row;
}

State12 vehicle_part(const double* y) {
  State12 s;
  std::copy(y, y + kStateSize, s.v.begin());
  return s;
}

RotorSpeeds rotor_part(const double* y) {
  RotorSpeeds w;
  std::copy(y + kStateSize, y + kStateSize + 4, w.w.begin());
  return w;
}

template <std::size_t N>
void integrate(const SimConfig& config, ClosedLoop& loop, SimResult& result) {
  constexpr bool kMotor = N == kStateSize + 4;
  std::array<double, N> y{};
  std::copy(config.initial_state.v.begin(), config.initial_state.v.end(),
            y.begin());
  if constexpr (kMotor) {
    // Rotors start at the speeds that realise the initial command.
    const Evaluation start = loop.evaluate_ideal(config.initial_state, 0.0);
    std::copy(start.rotors.w.begin(), start.rotors.w.end(),
              y.begin() + kStateSize);
  }

  auto evaluate = [&loop](const std::array<double, N>& yy, double t) {
    if constexpr (kMotor) {
      return loop.evaluate_motor(vehicle_part(yy.data()),
                                 rotor_part(yy.data()), t);
    } else {
      return loop.evaluate_ideal(vehicle_part(yy.data()), t);
    }
  };

  auto rate = [&](double t, const std::array<double, N>& yy) {
    const Evaluation ev = evaluate(yy, t);
    const State12 s = vehicle_part(yy.data());
    std::array<double, N> dy{};
    if constexpr (kMotor) {
      const RotorSpeeds w = rotor_part(yy.data());
      const StateRate ds =
          loop.vehicle_rate(s, mix(w, loop.params()), ev.omega_r);
      std::copy(ds.v.begin(), ds.v.end(), dy.begin());
      const auto dw = loop.motor_rate(w, ev.ctrl.u, nullptr);
      std::copy(dw.begin(), dw.end(), dy.begin() + kStateSize);
    } else {
      const StateRate ds = loop.vehicle_rate(s, ev.ctrl.u, ev.omega_r);
      std::copy(ds.v.begin(), ds.v.end(), dy.begin());
    }
    return dy;
  };

  const std::size_t steps = config.steps();
  result.log.rows.reserve(steps / config.stride + 1);
  for (std::size_t n = 0;; ++n) {
    const double t = static_cast<double>(n) * config.dt;
    Evaluation ev = evaluate(y, t);
    if constexpr (kMotor) {
      loop.motor_rate(rotor_part(y.data()), ev.ctrl.u,
                      &ev.allocation_clamped);
    }
    if (n % config.stride == 0) {
      result.log.rows.push_back(
          make_row(t, vehicle_part(y.data()), ev));
    }
    if (n == steps) break;
    y = rk4_step(rate, y, t, config.dt);
    if constexpr (kMotor) {
      for (std::size_t i = kStateSize; i < N; ++i) y[i] = std::max(y[i], 0.0);
    }
    loop.controller().commit(t, ev.ctrl);
  }
}

}  // namespace

SimResult simulate(const SimConfig& config, const QuadParams& params,
                   const DerivedConstants& constants, const GainSet& gains,
                   const TrajectorySpec& traj) {
  config.validate();
  params.validate();
  gains.validate();
  traj.validate();

  SimResult result;
  ClosedLoop loop(config, params, constants, gains, traj);
  try {
    if (config.actuation == ActuationMode::motor) {
      integrate<kStateSize + 4>(config, loop, result);
    } else {
      integrate<kStateSize>(config, loop, result);
    }
  } catch (const NonFiniteStateError& e) {
    result.failure = SimFailure{FailureKind::non_finite, e.time(), e.what()};
  } catch (const ThrustSingularityError& e) {
    const double t =
        result.log.rows.empty() ? 0.0 : result.log.rows.back().t;
    result.failure = SimFailure{FailureKind::thrust_singularity, t, e.what()};
  } catch (const VirtualControlSingularityError& e) {
    const double t =
        result.log.rows.empty() ? 0.0 : result.log.rows.back().t;
    result.failure = SimFailure{FailureKind::virtual_singularity, t, e.what()};
  }
  return result;
}

SimResult simulate(const SimConfig& config, const QuadParams& params,
                   const GainSet& gains, const TrajectorySpec& traj) {
  return simulate(config, params, derive_constants(params), gains, traj);
}

SimLog run(const SimConfig& config, const QuadParams& params,
           const GainSet& gains, const TrajectorySpec& traj) {
  SimResult r = simulate(config, params, gains, traj);
  if (r.failure) {
    switch (r.failure->kind) {
      case FailureKind::non_finite:
        throw NonFiniteStateError(r.failure->message, r.failure->time);
      case FailureKind::thrust_singularity:
        throw ThrustSingularityError(r.failure->message);
      case FailureKind::virtual_singularity:
        throw VirtualControlSingularityError(r.failure->message);
    }
  }
  return std::move(r.log);
}

Metrics metrics(const SimLog& log) {
  if (log.rows.empty()) throw PreconditionError("metrics: empty log");
  Metrics m;
  const auto& rows = log.rows;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    ChannelMetrics& cm = m.channels[c];
    double scale = 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double e = rows[i].errors[c];
      if (i + 1 < rows.size()) cm.ise += e * e * (rows[i + 1].t - rows[i].t);
      cm.max_abs_error = std::max(cm.max_abs_error, std::abs(e));
      scale = std::max(scale, std::abs(rows[i].ref.ch[c].value));
    }
    cm.final_abs_error = std::abs(rows.back().errors[c]);

    const double band = kSettlingBand * scale;
    std::size_t first_inside = rows.size();
    for (std::size_t i = rows.size(); i-- > 0;) {
      if (std::abs(rows[i].errors[c]) > band) break;
      first_inside = i;
    }
    if (first_inside < rows.size()) cm.settling_time = rows[first_inside].t;
  }
  return m;
}

}  // namespace quadsmc
