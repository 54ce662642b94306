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

#include <atomic>
#include <cmath>

#include "quadsmc/errors.hpp"
#include "quadsmc/tune.hpp"
#include "support.hpp"

using namespace quadsmc;
using quadsmc::testing::bundled;

namespace {

double quadratic(std::span<const double> x) { return (x[0] - 5.0) * (x[0] - 5.0); }

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

TuneProblem short_problem() {
  const RunConfig c = bundled("tune_fig3");
  TuneProblem p = make_tune_problem(c);
  p.sim.t_end = 1.0;
  return p;
}

}  // namespace

TEST_CASE("one-dimensional quadratic") {
  NelderMeadOptions opt;
  opt.budget = 200;
  opt.seed = 3;
  const OptimizeResult r = nelder_mead(quadratic, {100.0}, Box{{0}, {1000}}, opt);
  CHECK(r.best_point[0] == doctest::Approx(5.0).epsilon(1e-4));
  CHECK(std::abs(r.best_point[0] - 5.0) < 1e-3);
  CHECK(r.trace.size() <= 200);
}

TEST_CASE("rosenbrock inside a box") {
  NelderMeadOptions opt;
  opt.budget = 2000;
  const OptimizeResult r =
      nelder_mead(rosenbrock, {-1.2, 1.0}, Box{{-2, -2}, {2, 2}}, opt);
  CHECK(r.best_value < 1e-8);
}

TEST_CASE("minimum on the boundary") {
  NelderMeadOptions opt;
  opt.budget = 300;
  const auto f = [](std::span<const double> x) { return x[0] + x[1]; };
  const OptimizeResult r = nelder_mead(f, {3.0, 4.0}, Box{{1, 2}, {10, 10}}, opt);
  CHECK(r.best_point[0] == doctest::Approx(1.0));
  CHECK(r.best_point[1] == doctest::Approx(2.0));
}

TEST_CASE("trace invariants") {
  NelderMeadOptions opt;
  opt.budget = 150;
  opt.seed = 17;
  const Box box{{-1, -1, -1}, {1, 1, 1}};
  const auto f = [](std::span<const double> x) {
    return std::pow(x[0] - 0.3, 2) + 2 * std::pow(x[1] + 0.2, 2) +
           std::abs(x[2] - 0.9);
  };
  const OptimizeResult r = nelder_mead(f, {0.5, 0.5, 0.5}, box, opt);
  REQUIRE(r.trace.size() == 150);
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].index == i);
    CHECK(box.contains(r.trace[i].point));
    if (i > 0) CHECK(r.trace[i].best_so_far <= r.trace[i - 1].best_so_far);
  }
  CHECK(r.best_value == r.trace.back().best_so_far);
}

TEST_CASE("seed changes only the start and runs are reproducible") {
  NelderMeadOptions opt;
  opt.budget = 60;
  opt.seed = 1;
  const auto f = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  const Box box{{-5, -5}, {5, 5}};
  const OptimizeResult a = nelder_mead(f, {1, 2}, box, opt);
  const OptimizeResult b = nelder_mead(f, {1, 2}, box, opt);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].point == b.trace[i].point);
    CHECK(a.trace[i].value == b.trace[i].value);
  }
}

TEST_CASE("parallel evaluation gives the serial trace") {
  std::atomic<int> calls{0};
  const Objective f = [&calls](std::span<const double> x) {
    ++calls;
    return std::pow(x[0] - 1, 2) + std::pow(x[1] - 2, 2) + std::pow(x[2] + 1, 2);
  };
  NelderMeadOptions opt;
  opt.budget = 80;
  const Box box{{-5, -5, -5}, {5, 5, 5}};
  const OptimizeResult serial = nelder_mead(f, {0, 0, 0}, box, opt);
  opt.threads = 4;
  const OptimizeResult parallel = nelder_mead(f, {0, 0, 0}, box, opt);
  REQUIRE(serial.trace.size() == parallel.trace.size());
  for (std::size_t i = 0; i < serial.trace.size(); ++i) {
    CHECK(serial.trace[i].value == parallel.trace[i].value);
  }
  CHECK(calls == 160);
}

TEST_CASE("optimizer preconditions") {
  NelderMeadOptions opt;
  opt.budget = 2;
  CHECK_THROWS_AS(nelder_mead(quadratic, {1, 1}, Box{{0, 0}, {9, 9}}, opt),
                  PreconditionError);
  opt.budget = 10;
  CHECK_THROWS_AS(nelder_mead(quadratic, {1}, Box{{3}, {3}}, opt),
                  PreconditionError);
}

TEST_CASE("non-finite objective values are penalised") {
  NelderMeadOptions opt;
  opt.budget = 40;
  const auto f = [](std::span<const double> x) {
    return x[0] > 2 ? std::nan("") : (x[0] - 1) * (x[0] - 1);
  };
  const OptimizeResult r = nelder_mead(f, {1.9}, Box{{0}, {10}}, opt);
  for (const EvaluationRecord& e : r.trace) CHECK(std::isfinite(e.value));
  CHECK(r.best_point[0] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("gain encoding") {
  TuneProblem p = short_problem();
  CHECK(p.dimension() == 3);
  const Box box = p.box();
  CHECK(box.lower[0] == kMinTunedAlpha);
  CHECK(box.lower[1] == 0.0);
  CHECK(box.upper[2] == 1000.0);
  const std::vector<double> x = p.encode(p.base);
  CHECK(x[0] == doctest::Approx(0.2285737));
  CHECK(p.decode(x) == p.base);
  CHECK(parameter_names(p) == std::vector<std::string>{"alpha", "k", "q"});

  p.uniform = false;
  p.free = {GainGroup::k};
  CHECK(p.dimension() == 6);
  CHECK(parameter_names(p)[1] == "k_theta");
  std::vector<double> ks{1, 2, 3, 4, 5, 6};
  const GainSet g = p.decode(ks);
  CHECK(g.k[5] == 6.0);
  CHECK(g.alpha == p.base.alpha);
}

TEST_CASE("objective") {
  const TuneProblem p = short_problem();
  const double j0 = objective(p.base, p);
  CHECK(std::isfinite(j0));
  CHECK(j0 > 0.0);

  GainSet out_of_box = p.base;
  out_of_box.k[0] = 2000.0;
  CHECK_THROWS_AS(objective(out_of_box, p), PreconditionError);

  // Perfect tracking: start on the reference with zero error.
  TuneProblem perfect = p;
  perfect.trajectory = TrajectorySpec{};
  perfect.sim.initial_state = State12{};
  CHECK(objective(perfect.base, perfect) < 1e-12);

  SimLog log;
  log.rows.resize(3);
  CHECK(tracking_cost(log, default_objective_channels(ControllerMode::attitude)) == 0.0);
}

TEST_CASE("diverging rollouts get the penalty") {
  TuneProblem p = short_problem();
  p.trajectory[Channel::phi] = RampProfile{3.0};
  p.sim.initial_state = State12{};
  p.sim.initial_state[StateIndex::phi_dot] = 3.0;
  GainSet g = p.base;
  g.k.fill(0.0);
  g.q.fill(0.0);
  CHECK(objective(g, p) == kDivergencePenalty);
}

TEST_CASE("tuning improves on the baseline") {
  const TuneProblem p = short_problem();
  const TuneResult r = optimize(p, 30, 5);
  CHECK(r.best_objective <= r.baseline_objective);
  CHECK(r.baseline_objective == doctest::Approx(objective(p.base, p)));
  CHECK_THROWS_AS(optimize(p, 3, 5), PreconditionError);
}
