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

#include "quadsmc/tune.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include "quadsmc/errors.hpp"

namespace quadsmc {

std::vector<double> Box::project(std::vector<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], lower[i], upper[i]);
  }
  return x;
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

/// Bookkeeping shared by all phases: budget, trace and incumbent.
class Evaluator {
 public:
  Evaluator(const Objective& f, const Box& box, std::size_t budget,
            unsigned threads)
      : f_(f), box_(box), budget_(budget), threads_(std::max(1u, threads)) {}

  std::size_t remaining() const { return budget_ - trace_.size(); }

  double evaluate(const std::vector<double>& x) {
    return evaluate_batch({x}).front();
  }

  /// Evaluates all points (concurrently if allowed) and records them in
  /// input order, so the trace does not depend on scheduling.
  std::vector<double> evaluate_batch(const std::vector<std::vector<double>>& xs) {
    std::vector<double> values(xs.size());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads_, xs.size()));
    if (workers <= 1) {
      for (std::size_t i = 0; i < xs.size(); ++i) values[i] = f_(xs[i]);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < xs.size(); i = next++) {
              values[i] = f_(xs[i]);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      record(xs[i], values[i]);
    }
    return values;
  }

  OptimizeResult finish() {
    OptimizeResult r;
    r.best_point = best_x_;
    r.best_value = best_f_;
    r.trace = std::move(trace_);
    return r;
  }

 private:
  void record(const std::vector<double>& x, double v) {
    if (!std::isfinite(v)) v = kDivergencePenalty;
    if (trace_.empty() || v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    trace_.push_back({trace_.size(), x, v, best_f_});
  }

  const Objective& f_;
  const Box& box_;
  std::size_t budget_;
  unsigned threads_;
  std::vector<EvaluationRecord> trace_;
  std::vector<double> best_x_;
  double best_f_ = 0.0;
};

std::vector<double> initial_steps(const std::vector<double>& x0, const Box& box,
                                  double spread) {
  std::vector<double> step(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double scale = std::abs(x0[i]) > 0.0
                             ? std::abs(x0[i])
                             : 1e-2 * (box.upper[i] - box.lower[i]);
    step[i] = spread * scale;
  }
  return step;
}

/// Simplex points other than `center`, one per coordinate, with seeded edge
/// directions.
std::vector<std::vector<double>> simplex_around(const std::vector<double>& center,
                                                const std::vector<double>& step,
                                                const Box& box,
                                                std::mt19937_64& rng) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < center.size(); ++i) {
    const double dir = (rng() & 1u) ? 1.0 : -1.0;
    std::vector<double> p = center;
    p[i] = center[i] + dir * step[i];
    p = box.project(p);
    if (p[i] == center[i]) {
      p[i] = center[i] - dir * step[i];
      p = box.project(p);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

bool collapsed(const std::vector<Vertex>& s, const NelderMeadOptions& opt) {
  const Vertex& best = s.front();
  double xscale = 1.0, dx = 0.0;
  for (double v : best.x) xscale = std::max(xscale, std::abs(v));
  for (const Vertex& v : s) {
    for (std::size_t i = 0; i < v.x.size(); ++i) {
      dx = std::max(dx, std::abs(v.x[i] - best.x[i]));
    }
  }
  const double df = s.back().f - best.f;
  return dx <= opt.x_tolerance * xscale ||
         df <= opt.f_tolerance * (1.0 + std::abs(best.f));
}

void order(std::vector<Vertex>& s) {
  std::stable_sort(s.begin(), s.end(),
                   [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
}

}  // namespace

OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const Box& box, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0 || box.lower.size() != n || box.upper.size() != n) {
    throw PreconditionError("nelder_mead: dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(box.lower[i] < box.upper[i])) {
      throw PreconditionError("nelder_mead: bounds must satisfy low < high");
    }
  }
  if (options.budget < n + 1) {
    throw PreconditionError("nelder_mead: budget must be >= dimension + 1");
  }

  std::mt19937_64 rng(options.seed);
  Evaluator ev(f, box, options.budget, options.threads);
  x0 = box.project(std::move(x0));
  const std::vector<double> step = initial_steps(x0, box, options.spread);

  std::vector<Vertex> simplex;
  {
    std::vector<std::vector<double>> pts{x0};
    for (auto& p : simplex_around(x0, step, box, rng)) pts.push_back(p);
    const std::vector<double> fs = ev.evaluate_batch(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) simplex.push_back({pts[i], fs[i]});
  }

  auto affine = [&box](const std::vector<double>& a, const std::vector<double>& b,
                       double t) {
    // a + t (b - a), projected
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return box.project(std::move(r));
  };

  while (ev.remaining() > 0) {
    order(simplex);

    if (collapsed(simplex, options)) {
      if (ev.remaining() < n + 1) break;
      const Vertex best = simplex.front();
      std::vector<double> restart_step = step;
      for (std::size_t i = 0; i < n; ++i) {
        restart_step[i] = std::max(options.spread * std::abs(best.x[i]),
                                   options.x_tolerance * 100.0);
      }
      const auto pts = simplex_around(best.x, restart_step, box, rng);
      const std::vector<double> fs = ev.evaluate_batch(pts);
      simplex.assign(1, best);
      for (std::size_t i = 0; i < pts.size(); ++i) simplex.push_back({pts[i], fs[i]});
      continue;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f;
    const double f_second = simplex[n - 1].f;

    const std::vector<double> xr = affine(centroid, worst.x, -kReflect);
    const double fr = ev.evaluate(xr);

    if (fr < f_best) {
      if (ev.remaining() == 0) {
        worst = {xr, fr};
        break;
      }
      const std::vector<double> xe = affine(centroid, worst.x, -kExpand);
      const double fe = ev.evaluate(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < f_second) {
      worst = {xr, fr};
      continue;
    }
    if (ev.remaining() == 0) break;

    const bool outside = fr < worst.f;
    const std::vector<double> xc =
        outside ? affine(centroid, xr, kContract)
                : affine(centroid, worst.x, kContract);
    const double fc = ev.evaluate(xc);
    if ((outside && fc <= fr) || (!outside && fc < worst.f)) {
      worst = {xc, fc};
      continue;
    }

    // Shrink toward the best vertex; as many points as the budget allows.
    std::vector<std::vector<double>> pts;
    for (std::size_t v = 1; v <= n && pts.size() < ev.remaining(); ++v) {
      pts.push_back(affine(simplex.front().x, simplex[v].x, kShrink));
    }
    if (pts.empty()) break;
    const std::vector<double> fs = ev.evaluate_batch(pts);
    for (std::size_t v = 0; v < pts.size(); ++v) {
      simplex[v + 1] = {pts[v], fs[v]};
    }
  }
  return ev.finish();
}

// ---------------------------------------------------------------------------
// Gain tuning

std::array<bool, kChannelCount> default_objective_channels(ControllerMode mode) {
  using C = Channel;
  std::array<bool, kChannelCount> on{};
  auto set = [&on](C c) { on[static_cast<std::size_t>(c)] = true; };
  if (mode == ControllerMode::attitude) {
    set(C::phi), set(C::theta), set(C::psi), set(C::z);
  } else {
    set(C::x), set(C::y), set(C::z), set(C::psi);
  }
  return on;
}

void TuneProblem::validate() const {
  if (free.empty()) {
    throw PreconditionError("TuneProblem: at least one free gain group");
  }
  if (!(lower < upper)) {
    throw PreconditionError("TuneProblem: bounds must satisfy low < high");
  }
  if (std::none_of(channels.begin(), channels.end(),
                   [](bool b) { return b; })) {
    throw PreconditionError("TuneProblem: no objective channel selected");
  }
  sim.validate();
  params.validate();
  trajectory.validate();
}

std::size_t TuneProblem::dimension() const {
  return free.size() * (uniform ? 1 : kChannelCount);
}

Box TuneProblem::box() const {
  Box b;
  for (GainGroup grp : free) {
    const double lo =
        grp == GainGroup::alpha ? std::max(lower, kMinTunedAlpha) : lower;
    const std::size_t count = uniform ? 1 : kChannelCount;
    for (std::size_t i = 0; i < count; ++i) {
      b.lower.push_back(lo);
      b.upper.push_back(upper);
    }
  }
  return b;
}

namespace {

std::array<double, kChannelCount>& group_of(GainSet& g, GainGroup grp) {
  switch (grp) {
    case GainGroup::alpha:
      return g.alpha;
    case GainGroup::k:
      return g.k;
    case GainGroup::q:
      break;
  }
  return g.q;
}

const char* group_name(GainGroup grp) {
  switch (grp) {
    case GainGroup::alpha:
      return "alpha";
    case GainGroup::k:
      return "k";
    case GainGroup::q:
      break;
  }
  return "q";
}

}  // namespace

std::vector<double> TuneProblem::encode(const GainSet& g) const {
  GainSet copy = g;
  std::vector<double> x;
  for (GainGroup grp : free) {
    const auto& values = group_of(copy, grp);
    if (uniform) {
      // Mean of the per-loop values seeds the shared scalar; equal values
      // are passed through so encode and decode round-trip exactly.
      const bool equal = std::all_of(values.begin(), values.end(),
                                     [&](double v) { return v == values[0]; });
      x.push_back(equal ? values[0]
                        : std::accumulate(values.begin(), values.end(), 0.0) /
                              static_cast<double>(kChannelCount));
    } else {
      x.insert(x.end(), values.begin(), values.end());
    }
  }
  return x;
}

GainSet TuneProblem::decode(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw PreconditionError("TuneProblem::decode: dimension mismatch");
  }
  GainSet g = base;
  std::size_t pos = 0;
  for (GainGroup grp : free) {
    auto& values = group_of(g, grp);
    if (uniform) {
      values.fill(x[pos++]);
    } else {
      for (double& v : values) v = x[pos++];
    }
  }
  return g;
}

std::vector<std::string> parameter_names(const TuneProblem& problem) {
  std::vector<std::string> names;
  for (GainGroup grp : problem.free) {
    if (problem.uniform) {
      names.emplace_back(group_name(grp));
    } else {
      for (auto ch : kChannelNames) {
        names.push_back(std::string(group_name(grp)) + "_" + std::string(ch));
      }
    }
  }
  return names;
}

double tracking_cost(const SimLog& log,
                     const std::array<bool, kChannelCount>& channels) {
  const Metrics m = metrics(log);
  double total = 0.0;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    if (channels[c]) total += m.channels[c].ise;
  }
  return total;
}

double objective(const GainSet& gains, const TuneProblem& problem) {
  GainSet copy = gains;
  for (GainGroup grp : problem.free) {
    const double lo = grp == GainGroup::alpha
                          ? std::max(problem.lower, kMinTunedAlpha)
                          : problem.lower;
    for (double v : group_of(copy, grp)) {
      if (!(v >= lo && v <= problem.upper)) {
        throw PreconditionError("objective: gains outside the tuning box");
      }
    }
  }
  const SimResult r = simulate(problem.sim, problem.params, problem.constants,
                               gains, problem.trajectory);
  if (r.failure || r.log.rows.empty()) return kDivergencePenalty;
  const double cost = tracking_cost(r.log, problem.channels);
  return std::isfinite(cost) ? std::min(cost, kDivergencePenalty)
                             : kDivergencePenalty;
}

TuneResult optimize(const TuneProblem& problem, std::size_t budget,
                    std::uint64_t seed, unsigned threads) {
  problem.validate();
  const std::size_t dim = problem.dimension();
  if (budget < dim + 1) {
    throw PreconditionError("optimize: budget must be >= dimension + 1");
  }
  const Box box = problem.box();
  std::vector<double> x0 = box.project(problem.encode(problem.base));

  NelderMeadOptions opt;
  opt.budget = budget;
  opt.seed = seed;
  opt.threads = threads;
  const Objective f = [&problem](std::span<const double> x) {
    return objective(problem.decode(x), problem);
  };
  OptimizeResult r = nelder_mead(f, x0, box, opt);

  TuneResult out;
  out.best = problem.decode(r.best_point);
  out.best_objective = r.best_value;
  out.baseline_objective = r.trace.front().value;
  out.trace = std::move(r.trace);
  return out;
}

}  // namespace quadsmc
