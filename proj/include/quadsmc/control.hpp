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
 * @file control.hpp
 * @brief Backstepping sliding-mode control laws.
 *
 * Each of the six loops (phi, theta, psi, x, y, z) tracks its reference
 * through the surface
 *
 *     S = rate - ref.rate - alpha * (ref.value - value)
 *
 * and the control input is solved so that the closed loop satisfies the
 * reaching law dS/dt = -q * sw(S) - k * S exactly for the nominal model,
 * where sw is either sign() or a boundary-layer saturation.
 */

#include <array>
#include <optional>

#include "quadsmc/dynamics.hpp"
#include "quadsmc/model.hpp"
#include "quadsmc/trajectory.hpp"

namespace quadsmc {

/// Per-loop gains, indexed by Channel. alpha[i] multiplies the position
/// error of loop i in its surface, k[i] and q[i] shape its reaching law.
struct GainSet {
  std::array<double, kChannelCount> alpha{};
  std::array<double, kChannelCount> k{};
  std::array<double, kChannelCount> q{};

  static GainSet uniform(double alpha, double k, double q);

  /// alpha > 0, k >= 0, q >= 0, all finite.
  void validate() const;

  friend bool operator==(const GainSet&, const GainSet&) = default;
};

struct SlidingSurfaces {
  std::array<double, kChannelCount> s{};

  double& operator[](Channel c) { return s[static_cast<std::size_t>(c)]; }
  double operator[](Channel c) const { return s[static_cast<std::size_t>(c)]; }
};

/// Position errors (ref.value - value) and surfaces, per channel.
struct TrackingErrors {
  std::array<double, kChannelCount> z{};
  SlidingSurfaces surfaces;
};

enum class SwitchingKind { sign, saturation };

/// The discontinuous term of the reaching law.
struct SwitchingLaw {
  SwitchingKind kind = SwitchingKind::sign;
  double epsilon = 0.05;  ///< boundary-layer half width for saturation

  /// sign(s) with sign(0) = 0, or clamp(s / epsilon, -1, 1).
  double operator()(double s) const;
};

TrackingErrors tracking_errors(const State12& s, const ReferencePoint& ref,
                               const GainSet& g);

struct ControlLawOutput {
  ControlVector u;
  /// Horizontal virtual controls; only set when position control is active.
  std::optional<double> ux;
  std::optional<double> uy;
};

inline constexpr double kThrustSingularityTolerance = 1e-3;
inline constexpr double kVirtualControlTolerance = 1e-6;

/// Evaluates the six laws. U1 is computed first; Ux and Uy are only formed
/// when `position_active` is set.
///
/// Throws ThrustSingularityError when |cos(phi) cos(theta)| < 1e-3 and
/// VirtualControlSingularityError when |U1| < 1e-6 with position active.
ControlLawOutput control_laws(const State12& s, const ReferencePoint& ref,
                              const TrackingErrors& errors,
                              RotorResidual omega_r, const DerivedConstants& c,
                              const QuadParams& p, const GainSet& g,
                              const SwitchingLaw& sw, bool position_active);

struct AttitudeCommand {
  double phi = 0.0;
  double theta = 0.0;
  bool clamped = false;  ///< an arcsin argument left [-1, 1]
};

/// Roll and pitch that realise the virtual controls at yaw `psi`:
///   Ux = cos(phi) sin(theta) cos(psi) + sin(phi) sin(psi)
///   Uy = cos(phi) sin(theta) sin(psi) - sin(phi) cos(psi)
AttitudeCommand attitude_from_virtual(double ux, double uy, double psi);

enum class ControllerMode { attitude, position };

struct ControllerConfig {
  ControllerMode mode = ControllerMode::attitude;
  SwitchingLaw switching;
};

/// Everything one controller evaluation produces.
struct ControllerOutput {
  ControlVector u;
  /// References the laws actually tracked. In position mode the roll and
  /// pitch entries are the ones derived from Ux and Uy.
  ReferencePoint ref;
  TrackingErrors errors;
  std::optional<double> ux;
  std::optional<double> uy;
  bool virtual_clamped = false;
};

/// Cascade wiring of the six laws.
///
/// Attitude mode feeds (phi, theta, psi) references straight to the inner
/// laws and holds altitude with the z law; x and y are left open loop.
/// Position mode closes x, y and z, turns (Ux, Uy) into roll and pitch
/// commands and then runs the attitude laws. The derived roll/pitch rates
/// come from a backward difference against the last committed step; their
/// accelerations are taken as zero.
///
/// Not thread-safe: one instance per rollout.
class Controller {
 public:
  Controller(const QuadParams& params, const DerivedConstants& constants,
             const GainSet& gains, const ControllerConfig& config);

  /// Pure with respect to the controller memory.
  ControllerOutput evaluate(const State12& s, double t,
                            const ReferencePoint& outer,
                            RotorResidual omega_r) const;

  /// Records the output evaluated at the start of an accepted step.
  void commit(double t, const ControllerOutput& out);

  const ControllerConfig& config() const { return config_; }
  const GainSet& gains() const { return gains_; }
  const DerivedConstants& constants() const { return constants_; }

 private:
  struct Memory {
    double t = 0.0;
    double phi_d = 0.0;
    double theta_d = 0.0;
  };

  QuadParams params_;
  DerivedConstants constants_;
  GainSet gains_;
  ControllerConfig config_;
  std::optional<Memory> memory_;
};

}  // namespace quadsmc
