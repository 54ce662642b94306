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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Thresholds are the published ones and are not tuned to
// make a run pass.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "quadsmc/check.hpp"
#include "quadsmc/config.hpp"
#include "quadsmc/sim.hpp"
#include "quadsmc/tune.hpp"
#include "support.hpp"

using namespace quadsmc;
using quadsmc::testing::bundled;
using quadsmc::testing::config_path;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// The attitude scenario with a boundary layer of half width 0.05.
RunConfig saturated_attitude(double dt) {
  RunConfig c = bundled("fig3_attitude");
  c.sim.controller.switching = {SwitchingKind::saturation, 0.05};
  c.sim.dt = dt;
  return c;
}

/// Fourth-order central estimate of dS/dt at interior samples.
std::vector<double> surface_rate(const SimLog& log, std::size_t ch, double dt) {
  const auto& r = log.rows;
  std::vector<double> d(r.size(), NAN);
  for (std::size_t i = 2; i + 2 < r.size(); ++i) {
    d[i] = (-r[i + 2].surfaces.s[ch] + 8 * r[i + 1].surfaces.s[ch] -
            8 * r[i - 1].surfaces.s[ch] + r[i - 2].surfaces.s[ch]) /
           (12 * dt);
  }
  return d;
}

double reaching_rms(double dt) {
  const RunConfig c = saturated_attitude(dt);
  const SimLog log = run(c.sim, c.params, c.gains, c.trajectory);
  const std::size_t ch = static_cast<std::size_t>(Channel::phi);
  const std::vector<double> ds = surface_rate(log, ch, dt);
  const SwitchingLaw& sw = c.sim.controller.switching;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (std::isnan(ds[i])) continue;
    const double s = log.rows[i].surfaces.s[ch];
    const double r = ds[i] + c.gains.q[ch] * sw(s) + c.gains.k[ch] * s;
    sum += r * r;
    ++n;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

Outcome dual_form() {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig c = bundled("fig3_attitude");
  const double diff =
      dual_form_max_difference(c.params, derive_constants(c.params), 1000, 1);
  const double t = seconds_since(t0);
  return {diff < 1e-12 && t < 1.0,
          fmt("max |difference| %.3e (< 1e-12), %.3f s (< 1 s)", diff, t)};
}

Outcome equilibrium() {
  const RunConfig c = bundled("hover");
  SimConfig sim = c.sim;
  sim.dt = 1e-3;
  sim.t_end = 10.0;
  const SimLog log = run(sim, c.params, c.gains, c.trajectory);
  double drift = 0.0;
  for (const LogRow& r : log.rows) {
    for (std::size_t i = 0; i < kStateSize; ++i) {
      drift = std::max(drift, std::abs(r.state[i] - sim.initial_state[i]));
    }
  }
  const double u1 = log.rows.front().u.U1;
  const bool ok = drift < 1e-9 && std::abs(u1 - 4.7628) < 1e-9 &&
                  std::abs(log.rows.back().t - 10.0) < 1e-9;
  return {ok, fmt("U1 %.6f N, max state drift %.3e over %.1f s (< 1e-9)", u1,
                  drift, log.rows.back().t)};
}

Outcome reaching_residual() {
  const double coarse = reaching_rms(2e-3);
  const double fine = reaching_rms(1e-3);
  const double ratio = coarse / fine;
  return {ratio >= 8.0,
          fmt("RMS residual %.3e at dt=2e-3, %.3e at dt=1e-3, ratio %.2f (>= 8)",
              coarse, fine, ratio)};
}

Outcome sliding_condition() {
  const RunConfig c = saturated_attitude(1e-3);
  const SimLog log = run(c.sim, c.params, c.gains, c.trajectory);
  const double eps = c.sim.controller.switching.epsilon;
  bool all = true;
  std::string detail;
  for (std::size_t ch = 0; ch < kChannelCount; ++ch) {
    const std::vector<double> ds = surface_rate(log, ch, c.sim.dt);
    std::size_t outside = 0, attracted = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const double s = log.rows[i].surfaces.s[ch];
      if (std::isnan(ds[i]) || std::abs(s) <= eps) continue;
      ++outside;
      attracted += s * ds[i] < 0.0 ? 1 : 0;
    }
    const double share =
        outside == 0 ? 1.0 : static_cast<double>(attracted) / outside;
    all = all && share >= 0.99;
    detail += fmt("%sS_%s %.1f%% of %zu", detail.empty() ? "" : ", ",
                  std::string(kChannelNames[ch]).c_str(), 100 * share, outside);
  }
  return {all, detail + " (each >= 99%)"};
}

Outcome attitude_tracking() {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig c = bundled("fig3_attitude");
  const SimLog log = run(c.sim, c.params, c.gains, c.trajectory);
  const double t = seconds_since(t0);
  double early = 0, late = 0;
  std::size_t ne = 0, nl = 0;
  for (const LogRow& r : log.rows) {
    const double e = std::abs(r.errors[0]);
    if (r.t <= 1.0 + 1e-9) early += e, ++ne;
    if (r.t >= 5.0 - 1e-9) late += e, ++nl;
  }
  early /= ne, late /= nl;
  const double final_err = std::abs(log.rows.back().errors[0]);
  const bool ok = late < early && final_err < 0.05 && t < 5.0;
  return {ok, fmt("mean |e_phi| %.4f on [0,1], %.4f on [5,10]; final %.4f rad "
                  "(< 0.05); %.2f s (< 5 s)",
                  early, late, final_err, t)};
}

Outcome position_tracking() {
  const RunConfig c = bundled("fig7_position");
  const SimLog log = run(c.sim, c.params, c.gains, c.trajectory);
  const double t_end = log.rows.back().t;
  bool ok = std::abs(t_end - 15.0) < 1e-9;
  std::string detail;
  for (Channel ch : {Channel::x, Channel::y, Channel::z}) {
    const std::size_t i = static_cast<std::size_t>(ch);
    double scale = 1.0, worst = 0.0;
    for (const LogRow& r : log.rows) scale = std::max(scale, std::abs(r.ref.ch[i].value));
    for (const LogRow& r : log.rows) {
      if (r.t >= t_end - 5.0 - 1e-9) worst = std::max(worst, std::abs(r.errors[i]));
    }
    const double band = kSettlingBand * scale;
    ok = ok && worst <= band;
    detail += fmt("%s%s max |e| %.4f in band %.3f", detail.empty() ? "" : ", ",
                  std::string(kChannelNames[i]).c_str(), worst, band);
  }
  return {ok, detail + " over the final 5 s of 15 s"};
}

Outcome mixer_round_trip() {
  const RunConfig c = bundled("fig3_attitude");
  const double err = mixer_max_relative_error(c.params, 1000, 2);
  return {err < 1e-9, fmt("max relative error %.3e (< 1e-9)", err)};
}

double exp_error(double dt) {
  std::array<double, 1> y{1.0};
  const auto f = [](double, const std::array<double, 1>& v) { return v; };
  const int n = static_cast<int>(std::lround(1.0 / dt));
  for (int i = 0; i < n; ++i) y = rk4_step(f, y, i * dt, dt);
  return std::abs(y[0] - std::exp(1.0));
}

Outcome rk4_order() {
  const double e1 = exp_error(0.1), e2 = exp_error(0.05), e3 = exp_error(0.025);
  const double r1 = e1 / e2, r2 = e2 / e3;
  const bool ok = std::abs(r1 - 16) <= 3.2 && std::abs(r2 - 16) <= 3.2;
  return {ok, fmt("error ratios %.2f and %.2f per halving (16 +/- 20%%)", r1, r2)};
}

Outcome tuner() {
  const RunConfig c = bundled("tune_fig3");
  const TuneProblem p = make_tune_problem(c);
  const TuneResult a = optimize(p, 200, c.tune.seed);
  const TuneResult b = optimize(p, 200, c.tune.seed);
  bool monotone = true;
  for (std::size_t i = 1; i < a.trace.size(); ++i) {
    monotone = monotone && a.trace[i].best_so_far <= a.trace[i - 1].best_so_far;
  }
  bool identical = a.trace.size() == b.trace.size();
  for (std::size_t i = 0; identical && i < a.trace.size(); ++i) {
    identical = a.trace[i].point == b.trace[i].point &&
                a.trace[i].value == b.trace[i].value;
  }
  const bool ok = a.best_objective <= a.baseline_objective && monotone && identical;
  return {ok, fmt("baseline ISE %.6g, best %.6g after %zu evaluations; "
                  "monotone %s; rerun identical %s",
                  a.baseline_objective, a.best_objective, a.trace.size(),
                  monotone ? "yes" : "no", identical ? "yes" : "no")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "quadsmc_acceptance";
  std::filesystem::remove_all(dir);
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const std::string cmd = std::string("\"") + QUADSMC_CLI +
                            "\" simulate --config \"" +
                            config_path("fig3_attitude") + "\" --out \"" +
                            (dir / std::to_string(i)).string() + "\" > /dev/null";
    codes[i] = std::system(cmd.c_str());
  }
  const std::string a = slurp(dir / "0" / "log.csv");
  const std::string b = slurp(dir / "1" / "log.csv");
  const bool ok = codes[0] == 0 && codes[1] == 0 && !a.empty() && a == b;
  return {ok, fmt("exit codes %d/%d, CSV %zu bytes, byte-identical %s", codes[0],
                  codes[1], a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "dual-form dynamics equivalence", dual_form},
      {2, "hover equilibrium", equilibrium},
      {3, "reaching-law residual scaling", reaching_residual},
      {4, "sliding condition on all six surfaces", sliding_condition},
      {5, "attitude tracking", attitude_tracking},
      {6, "position tracking", position_tracking},
      {7, "mixer round trip", mixer_round_trip},
      {8, "RK4 order", rk4_order},
      {9, "tuner beats the reference gains", tuner},
      {10, "CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
