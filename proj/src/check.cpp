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

#include "quadsmc/check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "quadsmc/actuation.hpp"
#include "quadsmc/dynamics.hpp"

namespace quadsmc {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

double dual_form_max_difference(const QuadParams& p, const DerivedConstants& c,
                                std::size_t samples, std::uint64_t seed) {
  Sampler u01(seed);
  double worst = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    State12 s;
    for (double& v : s.v) v = u01(-1.0, 1.0);
    const ControlVector u{u01(-5, 5), u01(-5, 5), u01(-5, 5), u01(-5, 5)};
    const RotorResidual om{u01(-50.0, 50.0)};
    const StateRate a = state_derivative(s, u, om, c, p);
    const StateRate b = torque_form_derivative(s, u, om, p);
    for (std::size_t i = 0; i < kStateSize; ++i) {
      // NaN must count as a failure, hence the negated comparison.
      const double d = std::abs(a[i] - b[i]);
      worst = !(d <= worst) ? d : worst;
    }
  }
  return worst;
}

double mixer_max_relative_error(const QuadParams& p, std::size_t samples,
                                std::uint64_t seed) {
  Sampler u01(seed);
  double worst = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    RotorSpeeds w;
    for (double& v : w.w) v = u01(0.0, 1000.0);
    const ControlVector u = mix(w, p);
    const ControlVector back = mix(allocate(u, p).speeds, p);
    const double du[] = {back.U1 - u.U1, back.U2 - u.U2, back.U3 - u.U3,
                         back.U4 - u.U4};
    const double norm = std::hypot(std::hypot(u.U1, u.U2), std::hypot(u.U3, u.U4));
    const double err = std::hypot(std::hypot(du[0], du[1]), std::hypot(du[2], du[3]));
    const double rel = err / std::max(norm, 1e-300);
    worst = !(rel <= worst) ? rel : worst;
  }
  return worst;
}

double rotation_max_orthonormality_error(std::size_t samples,
                                         std::uint64_t seed) {
  Sampler u01(seed);
  double worst = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const Eigen::Matrix3d r = rotation_matrix(
        u01(-M_PI, M_PI), u01(-M_PI / 2, M_PI / 2), u01(-M_PI, M_PI));
    const double ortho =
        (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    const double e = std::max(ortho, std::abs(r.determinant() - 1.0));
    worst = !(e <= worst) ? e : worst;
  }
  return worst;
}

double reaching_law_max_residual(const QuadParams& p,
                                 const DerivedConstants& c, const GainSet& g,
                                 const SwitchingLaw& sw, std::size_t samples,
                                 std::uint64_t seed) {
  static constexpr Channel kActuated[] = {Channel::phi, Channel::theta,
                                          Channel::psi, Channel::z};
  Sampler u01(seed);
  double worst = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    State12 s;
    for (double& v : s.v) v = u01(-1.0, 1.0);
    // Keep away from the thrust-law singularity at cos(phi) cos(theta) = 0.
    s[StateIndex::phi] = u01(-0.5, 0.5);
    s[StateIndex::theta] = u01(-0.5, 0.5);
    ReferencePoint ref;
    for (ChannelReference& r : ref.ch) {
      r = {u01(-1.0, 1.0), u01(-1.0, 1.0), u01(-1.0, 1.0)};
    }
    const RotorResidual om{u01(-50.0, 50.0)};

    const TrackingErrors e = tracking_errors(s, ref, g);
    const ControlLawOutput law =
        control_laws(s, ref, e, om, c, p, g, sw, false);
    const StateRate ds = state_derivative(s, law.u, om, c, p);

    for (Channel ch : kActuated) {
      const std::size_t i = static_cast<std::size_t>(ch);
      const std::size_t si = state_index_of(ch);
      const ChannelReference& r = ref.ch[i];
      const double drift = g.alpha[i] * (r.rate - s[si + 1]);
      const double s_dot = ds[si + 1] - r.accel - drift;
      const double sv = e.surfaces.s[i];
      const double residual = s_dot + g.q[i] * sw(sv) + g.k[i] * sv;
      const double scale = 1.0 + std::abs(ds[si + 1]) + std::abs(r.accel) +
                           std::abs(drift);
      const double rel = std::abs(residual) / scale;
      worst = !(rel <= worst) ? rel : worst;
    }
  }
  return worst;
}

std::vector<CheckResult> run_checks(const RunConfig& config,
                                    std::uint64_t seed) {
  const DerivedConstants c = config.constants();
  std::vector<CheckResult> out;
  auto add = [&out](const char* name, double measured, double tol) {
    out.push_back({name, measured < tol, measured, tol});
  };
  add("dual_form_equivalence",
      dual_form_max_difference(config.params, c, kCheckSamples, seed),
      kDualFormTolerance);
  add("mixer_round_trip",
      mixer_max_relative_error(config.params, kCheckSamples, seed + 1),
      kMixerTolerance);
  add("rotation_orthonormality",
      rotation_max_orthonormality_error(kCheckSamples, seed + 2),
      kRotationTolerance);
  add("reaching_law_residual",
      reaching_law_max_residual(config.params, c, config.gains,
                                config.sim.controller.switching, kCheckSamples,
                                seed + 3),
      kReachingTolerance);
  return out;
}

}  // namespace quadsmc
