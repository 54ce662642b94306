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

#include "quadsmc/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include <json.hpp>

namespace quadsmc {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

void append(std::string& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  const auto r =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

const char* failure_name(FailureKind k) {
  switch (k) {
    case FailureKind::non_finite:
      return "non_finite_state";
    case FailureKind::thrust_singularity:
      return "thrust_singularity";
    case FailureKind::virtual_singularity:
      break;
  }
  return "virtual_control_singularity";
}

}  // namespace

std::string log_csv(const SimLog& log) {
  std::string out(kCsvHeader);
  out += '\n';
  out.reserve(out.size() + log.rows.size() * 35 * 12);
  for (const LogRow& r : log.rows) {
    append(out, r.t);
    for (double v : r.state.v) out += ',', append(out, v);
    for (const ChannelReference& c : r.ref.ch) out += ',', append(out, c.value);
    for (double v : {r.u.U1, r.u.U2, r.u.U3, r.u.U4}) out += ',', append(out, v);
    for (double v : r.surfaces.s) out += ',', append(out, v);
    for (double v : r.errors) out += ',', append(out, v);
    out += '\n';
  }
  return out;
}

std::string metrics_json(const SimLog& log,
                         const std::optional<SimFailure>& failure,
                         const RunConfig& config) {
  json doc;
  doc["name"] = config.name;
  doc["samples"] = log.rows.size();
  doc["t_final"] = log.rows.empty() ? 0.0 : log.rows.back().t;
  if (failure) {
    doc["status"] = "diverged";
    doc["failure"] = {{"kind", failure_name(failure->kind)},
                      {"time", failure->time},
                      {"message", failure->message}};
  } else {
    doc["status"] = "ok";
  }
  json channels = json::object();
  if (!log.rows.empty()) {
    const Metrics m = metrics(log);
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      const ChannelMetrics& cm = m.channels[c];
      json entry = {{"ise", cm.ise},
                    {"final_abs_error", cm.final_abs_error},
                    {"max_abs_error", cm.max_abs_error}};
      entry["settling_time"] =
          cm.settling_time ? json(*cm.settling_time) : json(nullptr);
      channels[std::string(kChannelNames[c])] = entry;
    }
  }
  doc["channels"] = channels;
  std::size_t clamped = 0;
  for (const LogRow& r : log.rows) clamped += r.allocation_clamped ? 1 : 0;
  doc["allocation_clamped_samples"] = clamped;
  return doc.dump(2) + "\n";
}

std::vector<Channel> plotted_channels(ControllerMode mode) {
  if (mode == ControllerMode::attitude) {
    return {Channel::phi, Channel::theta, Channel::psi};
  }
  return {Channel::x, Channel::y, Channel::z};
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 760.0;
constexpr double kPanelHeight = 230.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMaxPoints = 1500.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  }
  /// Pads degenerate or empty ranges so the mapping is well defined.
  void settle() {
    if (!(lo <= hi)) lo = -1.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = std::max(1e-3, 0.1 * std::abs(lo));
      lo -= pad, hi += pad;
    }
  }
};

std::vector<std::size_t> sample_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  const std::size_t step = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(static_cast<double>(n) / kMaxPoints)));
  for (std::size_t i = 0; i < n; i += step) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Panel {
  double top;
  Range x;
  Range y;

  double px(double v) const {
    return kMarginLeft +
           (v - x.lo) / (x.hi - x.lo) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double v) const {
    return top + kPanelHeight - (v - y.lo) / (y.hi - y.lo) * kPanelHeight;
  }

  void frame(std::string& svg, const std::string& ylabel) const {
    const double w = kWidth - kMarginLeft - kMarginRight;
    svg += "<rect x=\"" + fixed(kMarginLeft, 1) + "\" y=\"" + fixed(top, 1) +
           "\" width=\"" + fixed(w, 1) + "\" height=\"" +
           fixed(kPanelHeight, 1) +
           "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double v = y.lo + (y.hi - y.lo) * i / 4.0;
      const double yy = py(v);
      svg += "<line x1=\"" + fixed(kMarginLeft, 1) + "\" y1=\"" + fixed(yy, 1) +
             "\" x2=\"" + fixed(kMarginLeft + w, 1) + "\" y2=\"" +
             fixed(yy, 1) + "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
      svg += "<text x=\"" + fixed(kMarginLeft - 6, 1) + "\" y=\"" +
             fixed(yy + 4, 1) + "\" text-anchor=\"end\">" + fixed(v, 3) +
             "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
      const double v = x.lo + (x.hi - x.lo) * i / 5.0;
      svg += "<text x=\"" + fixed(px(v), 1) + "\" y=\"" +
             fixed(top + kPanelHeight + 16, 1) + "\" text-anchor=\"middle\">" +
             fixed(v, 2) + "</text>\n";
    }
    svg += "<text x=\"14\" y=\"" + fixed(top + kPanelHeight / 2, 1) +
           "\" transform=\"rotate(-90 14 " + fixed(top + kPanelHeight / 2, 1) +
           ")\" text-anchor=\"middle\">" + escape(ylabel) + "</text>\n";
  }

  template <class F>
  void polyline(std::string& svg, const SimLog& log,
                const std::vector<std::size_t>& idx, F&& value,
                const char* colour, const char* dash) const {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += colour;
    svg += "\" stroke-width=\"1.5\"";
    if (dash != nullptr) svg += std::string(" stroke-dasharray=\"") + dash + "\"";
    svg += " points=\"";
    for (std::size_t i : idx) {
      const double v = value(log.rows[i]);
      if (!std::isfinite(v)) continue;
      svg += fixed(px(log.rows[i].t), 2) + "," + fixed(py(v), 2) + " ";
    }
    svg += "\"/>\n";
  }
};

std::string svg_open(double height, const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fixed(kWidth, 0) + "\" height=\"" + fixed(height, 0) +
         "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(height, 0) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         "<text x=\"" + fixed(kWidth / 2, 1) +
         "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
}

void legend(std::string& svg, double x, double y,
            std::initializer_list<std::pair<const char*, const char*>> items) {
  for (const auto& [label, colour] : items) {
    svg += "<line x1=\"" + fixed(x, 1) + "\" y1=\"" + fixed(y, 1) + "\" x2=\"" +
           fixed(x + 20, 1) + "\" y2=\"" + fixed(y, 1) + "\" stroke=\"" +
           colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(x + 25, 1) + "\" y=\"" + fixed(y + 4, 1) +
           "\">" + label + "</text>\n";
    x += 110;
  }
}

}  // namespace

std::string channel_svg(const SimLog& log, Channel channel) {
  const std::size_t c = static_cast<std::size_t>(channel);
  const std::size_t si = state_index_of(channel);
  const std::string name(kChannelNames[c]);
  const auto idx = sample_indices(log.rows.size());

  Range t;
  Range track;
  Range err;
  for (const LogRow& r : log.rows) {
    t.add(r.t);
    track.add(r.ref.ch[c].value);
    track.add(r.state[si]);
    err.add(r.errors[c]);
  }
  t.settle(), track.settle(), err.settle();

  const double top1 = 40.0;
  const double top2 = top1 + kPanelHeight + 50.0;
  const double height = top2 + kPanelHeight + 50.0;
  const Panel upper{top1, t, track};
  const Panel lower{top2, t, err};

  std::string svg = svg_open(height, name + ": desired vs obtained");
  upper.frame(svg, name);
  upper.polyline(
      svg, log, idx, [c](const LogRow& r) { return r.ref.ch[c].value; },
      "#1f77b4", "6,3");
  upper.polyline(
      svg, log, idx, [si](const LogRow& r) { return r.state[si]; }, "#d62728",
      nullptr);
  lower.frame(svg, "error " + name);
  lower.polyline(
      svg, log, idx, [c](const LogRow& r) { return r.errors[c]; }, "#2ca02c",
      nullptr);
  svg += "<text x=\"" + fixed(kWidth / 2, 1) + "\" y=\"" +
         fixed(height - 12, 1) + "\" text-anchor=\"middle\">t [s]</text>\n";
  legend(svg, kMarginLeft, top1 - 8,
         {{"desired", "#1f77b4"}, {"obtained", "#d62728"}, {"error", "#2ca02c"}});
  svg += "</svg>\n";
  return svg;
}

std::string trajectory_3d_svg(const SimLog& log) {
  // Isometric view: screen u = (x - y) cos 30deg, v = z + (x + y) sin 30deg.
  const double ca = std::cos(M_PI / 6.0);
  const double sa = std::sin(M_PI / 6.0);
  auto project = [&](double x, double y, double z) {
    return std::pair<double, double>{(x - y) * ca, z + (x + y) * sa};
  };
  const auto idx = sample_indices(log.rows.size());
  const std::size_t ix = state_index_of(Channel::x);
  const std::size_t iy = state_index_of(Channel::y);
  const std::size_t iz = state_index_of(Channel::z);

  Range u;
  Range v;
  auto include = [&](double x, double y, double z) {
    const auto [pu, pv] = project(x, y, z);
    u.add(pu), v.add(pv);
  };
  include(0, 0, 0);
  for (std::size_t i : idx) {
    const LogRow& r = log.rows[i];
    include(r.ref[Channel::x].value, r.ref[Channel::y].value,
            r.ref[Channel::z].value);
    include(r.state[ix], r.state[iy], r.state[iz]);
  }
  u.settle(), v.settle();

  const double size = 560.0;
  const double top = 50.0;
  const double height = top + size + 40.0;
  const double scale = size / std::max(u.hi - u.lo, v.hi - v.lo);
  const double ox = (kWidth - (u.hi - u.lo) * scale) / 2.0;
  auto to_screen = [&](double x, double y, double z) {
    const auto [pu, pv] = project(x, y, z);
    return std::pair<double, double>{ox + (pu - u.lo) * scale,
                                     top + size - (pv - v.lo) * scale};
  };

  std::string svg = svg_open(height, "3-D trajectory (isometric projection)");
  // Axis stubs from the origin, a tenth of the view each.
  const double stub = 0.1 * std::max(u.hi - u.lo, v.hi - v.lo);
  const auto [o0, o1] = to_screen(0, 0, 0);
  const std::pair<const char*, std::array<double, 3>> axes[] = {
      {"x", {stub, 0, 0}}, {"y", {0, stub, 0}}, {"z", {0, 0, stub}}};
  for (const auto& [label, dir] : axes) {
    const auto [a0, a1] = to_screen(dir[0], dir[1], dir[2]);
    svg += "<line x1=\"" + fixed(o0, 2) + "\" y1=\"" + fixed(o1, 2) +
           "\" x2=\"" + fixed(a0, 2) + "\" y2=\"" + fixed(a1, 2) +
           "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fixed(a0 + 4, 2) + "\" y=\"" + fixed(a1 - 4, 2) +
           "\">" + label + "</text>\n";
  }
  auto path = [&](auto&& point, const char* colour, const char* dash) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += colour;
    svg += "\" stroke-width=\"1.5\"";
    if (dash != nullptr) svg += std::string(" stroke-dasharray=\"") + dash + "\"";
    svg += " points=\"";
    for (std::size_t i : idx) {
      const auto [x, y, z] = point(log.rows[i]);
      if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) continue;
      const auto [sx, sy] = to_screen(x, y, z);
      svg += fixed(sx, 2) + "," + fixed(sy, 2) + " ";
    }
    svg += "\"/>\n";
  };
  path(
      [](const LogRow& r) {
        return std::array<double, 3>{r.ref[Channel::x].value,
                                     r.ref[Channel::y].value,
                                     r.ref[Channel::z].value};
      },
      "#1f77b4", "6,3");
  path(
      [&](const LogRow& r) {
        return std::array<double, 3>{r.state[ix], r.state[iy], r.state[iz]};
      },
      "#d62728", nullptr);
  legend(svg, kMarginLeft, top - 14, {{"desired", "#1f77b4"}, {"obtained", "#d62728"}});
  svg += "</svg>\n";
  return svg;
}

// ---------------------------------------------------------------------------
// Tuner outputs

std::string trace_csv(const std::vector<EvaluationRecord>& trace,
                      const std::vector<std::string>& names) {
  std::string out = "eval";
  for (const std::string& n : names) out += "," + n;
  out += ",objective,best_so_far\n";
  for (const EvaluationRecord& r : trace) {
    out += std::to_string(r.index);
    for (double v : r.point) out += ',', append(out, v);
    out += ',', append(out, r.value);
    out += ',', append(out, r.best_so_far);
    out += '\n';
  }
  return out;
}

std::string best_gains_json(const TuneResult& result, const TuneProblem& problem,
                            std::size_t budget, std::uint64_t seed) {
  json doc;
  doc["gains"] = {{"alpha", result.best.alpha},
                  {"k", result.best.k},
                  {"q", result.best.q}};
  doc["best_objective"] = result.best_objective;
  doc["baseline_objective"] = result.baseline_objective;
  doc["evaluations"] = result.trace.size();
  doc["budget"] = budget;
  doc["seed"] = seed;
  doc["uniform"] = problem.uniform;
  json channels = json::array();
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    if (problem.channels[c]) channels.push_back(std::string(kChannelNames[c]));
  }
  doc["objective_channels"] = channels;
  return doc.dump(2) + "\n";
}

std::string selftest_json(const OptimizeResult& result, std::size_t budget,
                          std::uint64_t seed) {
  json doc;
  doc["selftest"] = true;
  doc["best_point"] = result.best_point;
  doc["best_objective"] = result.best_value;
  doc["evaluations"] = result.trace.size();
  doc["budget"] = budget;
  doc["seed"] = seed;
  return doc.dump(2) + "\n";
}

}  // namespace quadsmc
