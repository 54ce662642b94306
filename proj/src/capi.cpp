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

#include "quadsmc/quadsmc.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "quadsmc/check.hpp"
#include "quadsmc/config.hpp"
#include "quadsmc/errors.hpp"
#include "quadsmc/report.hpp"
#include "quadsmc/sim.hpp"
#include "quadsmc/tune.hpp"

struct quadsmc_config {
  quadsmc::RunConfig cfg;
};

struct quadsmc_run {
  quadsmc::RunConfig cfg;
  quadsmc::SimResult result;
};

struct quadsmc_tune_result {
  bool selftest = false;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  quadsmc::TuneProblem problem;
  quadsmc::TuneResult tuned;
  quadsmc::OptimizeResult raw;  // selftest only
};

namespace {

thread_local std::string g_last_error;

quadsmc_status fail(quadsmc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

/// Maps library exceptions onto status codes.
template <class F>
quadsmc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const quadsmc::ConfigError& e) {
    return fail(QUADSMC_E_CONFIG, e.what());
  } catch (const quadsmc::PreconditionError& e) {
    return fail(QUADSMC_E_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QUADSMC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QUADSMC_E_INTERNAL, e.what());
  } catch (...) {
    return fail(QUADSMC_E_INTERNAL, "unknown error");
  }
}

quadsmc_status write_file(const std::filesystem::path& path,
                          const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) return fail(QUADSMC_E_IO, path.string() + ": cannot write");
  return QUADSMC_OK;
}

double selftest_objective(std::span<const double> x) {
  const double d = x[0] - 5.0;
  return d * d;
}

}  // namespace

extern "C" {

const char* quadsmc_version(void) { return "1.0.0"; }

const char* quadsmc_last_error(void) { return g_last_error.c_str(); }

quadsmc_status quadsmc_config_load(const char* path, quadsmc_config** out) {
  if (path == nullptr || out == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new quadsmc_config{quadsmc::load_config(path)};
    return QUADSMC_OK;
  });
}

quadsmc_status quadsmc_config_parse(const char* json_text, quadsmc_config** out) {
  if (json_text == nullptr || out == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new quadsmc_config{quadsmc::parse_config(json_text)};
    return QUADSMC_OK;
  });
}

void quadsmc_config_free(quadsmc_config* config) { delete config; }

const char* quadsmc_config_output_dir(const quadsmc_config* config) {
  if (config == nullptr || !config->cfg.output_dir) return nullptr;
  return config->cfg.output_dir->c_str();
}

uint64_t quadsmc_config_seed(const quadsmc_config* config) {
  return config == nullptr ? 0 : config->cfg.tune.seed;
}

int quadsmc_config_is_selftest(const quadsmc_config* config) {
  return config != nullptr && config->cfg.tune.selftest ? 1 : 0;
}

quadsmc_status quadsmc_simulate(const quadsmc_config* config, quadsmc_run** out) {
  if (config == nullptr || out == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    const quadsmc::RunConfig& c = config->cfg;
    auto run = std::make_unique<quadsmc_run>();
    run->cfg = c;
    run->result =
        quadsmc::simulate(c.sim, c.params, c.constants(), c.gains, c.trajectory);
    const bool diverged = run->result.failure.has_value();
    std::string message = diverged ? run->result.failure->message : "";
    *out = run.release();
    return diverged ? fail(QUADSMC_E_DIVERGED, message) : QUADSMC_OK;
  });
}

void quadsmc_run_free(quadsmc_run* run) { delete run; }

size_t quadsmc_run_rows(const quadsmc_run* run) {
  return run == nullptr ? 0 : run->result.log.rows.size();
}

int quadsmc_run_failed(const quadsmc_run* run, double* time) {
  if (run == nullptr || !run->result.failure) return 0;
  if (time != nullptr) *time = run->result.failure->time;
  return 1;
}

quadsmc_status quadsmc_run_ise(const quadsmc_run* run, int channel, double* out) {
  if (run == nullptr || out == nullptr || channel < 0 ||
      channel >= static_cast<int>(quadsmc::kChannelCount)) {
    return fail(QUADSMC_E_ARGUMENT, "invalid argument");
  }
  return guarded([&] {
    *out = quadsmc::metrics(run->result.log).channels[channel].ise;
    return QUADSMC_OK;
  });
}

quadsmc_status quadsmc_run_write_csv(const quadsmc_run* run, const char* path) {
  if (run == nullptr || path == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  return guarded([&] { return write_file(path, quadsmc::log_csv(run->result.log)); });
}

quadsmc_status quadsmc_run_write_metrics(const quadsmc_run* run,
                                         const char* path) {
  if (run == nullptr || path == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    return write_file(path, quadsmc::metrics_json(run->result.log,
                                                  run->result.failure, run->cfg));
  });
}

quadsmc_status quadsmc_run_write_plots(const quadsmc_run* run, const char* dir) {
  if (run == nullptr || dir == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const std::filesystem::path base(dir);
    const quadsmc::SimLog& log = run->result.log;
    const quadsmc::ControllerMode mode = run->cfg.sim.controller.mode;
    for (quadsmc::Channel c : quadsmc::plotted_channels(mode)) {
      const std::string name(quadsmc::kChannelNames[static_cast<std::size_t>(c)]);
      const quadsmc_status s =
          write_file(base / (name + ".svg"), quadsmc::channel_svg(log, c));
      if (s != QUADSMC_OK) return s;
    }
    if (mode == quadsmc::ControllerMode::position) {
      return write_file(base / "trajectory_3d.svg",
                        quadsmc::trajectory_3d_svg(log));
    }
    return QUADSMC_OK;
  });
}

quadsmc_status quadsmc_tune(const quadsmc_config* config, uint64_t seed,
                            unsigned threads, quadsmc_tune_result** out) {
  if (config == nullptr || out == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    const quadsmc::RunConfig& c = config->cfg;
    auto r = std::make_unique<quadsmc_tune_result>();
    r->selftest = c.tune.selftest;
    r->budget = c.tune.budget;
    r->seed = seed;
    if (r->selftest) {
      quadsmc::Box box{{c.tune.lower}, {c.tune.upper}};
      quadsmc::NelderMeadOptions opt;
      opt.budget = c.tune.budget;
      opt.seed = seed;
      opt.threads = threads;
      const double x0 = c.tune.lower + 0.1 * (c.tune.upper - c.tune.lower);
      r->raw = quadsmc::nelder_mead(selftest_objective, {x0}, box, opt);
    } else {
      r->problem = quadsmc::make_tune_problem(c);
      r->tuned = quadsmc::optimize(r->problem, c.tune.budget, seed, threads);
    }
    *out = r.release();
    return QUADSMC_OK;
  });
}

void quadsmc_tune_free(quadsmc_tune_result* result) { delete result; }

double quadsmc_tune_best_objective(const quadsmc_tune_result* r) {
  if (r == nullptr) return 0.0;
  return r->selftest ? r->raw.best_value : r->tuned.best_objective;
}

double quadsmc_tune_baseline_objective(const quadsmc_tune_result* r) {
  if (r == nullptr) return 0.0;
  return r->selftest ? r->raw.trace.front().value : r->tuned.baseline_objective;
}

size_t quadsmc_tune_evaluations(const quadsmc_tune_result* r) {
  if (r == nullptr) return 0;
  return r->selftest ? r->raw.trace.size() : r->tuned.trace.size();
}

size_t quadsmc_tune_best_point(const quadsmc_tune_result* r, double* out,
                               size_t capacity) {
  if (r == nullptr) return 0;
  const std::vector<double> x =
      r->selftest ? r->raw.best_point : r->problem.encode(r->tuned.best);
  for (std::size_t i = 0; out != nullptr && i < x.size() && i < capacity; ++i) {
    out[i] = x[i];
  }
  return x.size();
}

quadsmc_status quadsmc_tune_write_trace(const quadsmc_tune_result* r,
                                        const char* path) {
  if (r == nullptr || path == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    if (r->selftest) {
      return write_file(path, quadsmc::trace_csv(r->raw.trace, {"g"}));
    }
    return write_file(path, quadsmc::trace_csv(r->tuned.trace,
                                               quadsmc::parameter_names(r->problem)));
  });
}

quadsmc_status quadsmc_tune_write_best(const quadsmc_tune_result* r,
                                       const char* path) {
  if (r == nullptr || path == nullptr) {
    return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    if (r->selftest) {
      return write_file(path, quadsmc::selftest_json(r->raw, r->budget, r->seed));
    }
    return write_file(path, quadsmc::best_gains_json(r->tuned, r->problem,
                                                     r->budget, r->seed));
  });
}

quadsmc_status quadsmc_check(const quadsmc_config* config, uint64_t seed,
                             quadsmc_check_callback callback, void* user) {
  if (config == nullptr) return fail(QUADSMC_E_ARGUMENT, "NULL argument");
  return guarded([&] {
    bool all = true;
    for (const quadsmc::CheckResult& r : quadsmc::run_checks(config->cfg, seed)) {
      all = all && r.passed;
      if (callback != nullptr) {
        callback(r.name.c_str(), r.passed ? 1 : 0, r.measured, r.tolerance, user);
      }
    }
    return all ? QUADSMC_OK : fail(QUADSMC_CHECK_FAILED, "invariant check failed");
  });
}

}  // extern "C"
