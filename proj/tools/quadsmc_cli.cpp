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

// quadsmc: experiment harness over the C API.
//
//   quadsmc simulate --config run.json [--out dir]
//   quadsmc tune     --config run.json [--out dir] [--seed N]
//   quadsmc check    --config run.json [--seed N]
//
// Exit codes: 0 ok, 1 a check failed, 2 config or usage error,
// 3 the rollout diverged (partial outputs are still written).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "quadsmc/quadsmc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

using ConfigPtr = std::unique_ptr<quadsmc_config, decltype(&quadsmc_config_free)>;

int report(const char* what) {
  std::fprintf(stderr, "quadsmc: %s: %s\n", what, quadsmc_last_error());
  return kExitConfig;
}

ConfigPtr load(const Options& o) {
  quadsmc_config* raw = nullptr;
  if (quadsmc_config_load(o.config.c_str(), &raw) != QUADSMC_OK) {
    report("config");
  }
  return ConfigPtr(raw, quadsmc_config_free);
}

/// --out, else the document's output.dir, else "out".
std::filesystem::path output_dir(const Options& o, const quadsmc_config* cfg) {
  if (!o.out.empty()) return o.out;
  if (const char* dir = quadsmc_config_output_dir(cfg)) return dir;
  return "out";
}

bool make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "quadsmc: cannot create %s: %s\n", dir.c_str(),
                 ec.message().c_str());
    return false;
  }
  return true;
}

/// Concurrency for the tuner: QUADSMC_THREADS when set, else the core count.
std::optional<unsigned> tuner_threads() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("QUADSMC_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 4096) {
    std::fprintf(stderr,
                 "quadsmc: QUADSMC_THREADS must be a positive integer, got '%s'\n",
                 env);
    return std::nullopt;
  }
  return static_cast<unsigned>(v);
}

int cmd_simulate(const Options& o) {
  ConfigPtr cfg = load(o);
  if (!cfg) return kExitConfig;

  quadsmc_run* raw = nullptr;
  const quadsmc_status s = quadsmc_simulate(cfg.get(), &raw);
  std::unique_ptr<quadsmc_run, decltype(&quadsmc_run_free)> run(raw,
                                                                quadsmc_run_free);
  if (s != QUADSMC_OK && s != QUADSMC_E_DIVERGED) return report("simulate");
  const std::string divergence = s == QUADSMC_E_DIVERGED ? quadsmc_last_error() : "";

  const std::filesystem::path dir = output_dir(o, cfg.get());
  if (!make_dir(dir)) return kExitConfig;
  if (quadsmc_run_write_csv(run.get(), (dir / "log.csv").c_str()) != QUADSMC_OK ||
      quadsmc_run_write_metrics(run.get(), (dir / "metrics.json").c_str()) !=
          QUADSMC_OK ||
      quadsmc_run_write_plots(run.get(), dir.c_str()) != QUADSMC_OK) {
    return report("write");
  }

  if (s == QUADSMC_E_DIVERGED) {
    double t = 0.0;
    quadsmc_run_failed(run.get(), &t);
    std::fprintf(stderr, "quadsmc: rollout diverged at t=%.6g s: %s\n", t,
                 divergence.c_str());
    std::printf("partial log (%zu rows) written to %s\n",
                quadsmc_run_rows(run.get()), dir.c_str());
    return kExitDiverged;
  }
  std::printf("%zu rows written to %s\n", quadsmc_run_rows(run.get()),
              dir.c_str());
  return kExitOk;
}

int cmd_tune(const Options& o) {
  ConfigPtr cfg = load(o);
  if (!cfg) return kExitConfig;
  const std::optional<unsigned> threads = tuner_threads();
  if (!threads) return kExitConfig;
  const std::uint64_t seed = o.seed.value_or(quadsmc_config_seed(cfg.get()));

  quadsmc_tune_result* raw = nullptr;
  if (quadsmc_tune(cfg.get(), seed, *threads, &raw) != QUADSMC_OK) {
    return report("tune");
  }
  std::unique_ptr<quadsmc_tune_result, decltype(&quadsmc_tune_free)> result(
      raw, quadsmc_tune_free);

  const std::filesystem::path dir = output_dir(o, cfg.get());
  if (!make_dir(dir)) return kExitConfig;
  if (quadsmc_tune_write_trace(result.get(), (dir / "trace.csv").c_str()) !=
          QUADSMC_OK ||
      quadsmc_tune_write_best(result.get(), (dir / "best_gains.json").c_str()) !=
          QUADSMC_OK) {
    return report("write");
  }
  std::printf("evaluations %zu, baseline %.10g, best %.10g\n",
              quadsmc_tune_evaluations(result.get()),
              quadsmc_tune_baseline_objective(result.get()),
              quadsmc_tune_best_objective(result.get()));
  std::vector<double> best(quadsmc_tune_best_point(result.get(), nullptr, 0));
  quadsmc_tune_best_point(result.get(), best.data(), best.size());
  std::printf("best point:");
  for (double v : best) std::printf(" %.3f", v);
  std::printf("\n");
  return kExitOk;
}

void print_check(const char* name, int passed, double measured,
                 double tolerance, void*) {
  std::printf("%s %s (measured %.3e, tolerance %.1e)\n",
              passed ? "PASS" : "FAIL", name, measured, tolerance);
}

int cmd_check(const Options& o) {
  ConfigPtr cfg = load(o);
  if (!cfg) return kExitConfig;
  const std::uint64_t seed = o.seed.value_or(quadsmc_config_seed(cfg.get()));
  const quadsmc_status s = quadsmc_check(cfg.get(), seed, print_check, nullptr);
  if (s == QUADSMC_OK) return kExitOk;
  if (s == QUADSMC_CHECK_FAILED) return kExitCheckFailed;
  return report("check");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop quadrotor simulator with sliding-mode control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", quadsmc_version());

  Options opts;
  auto add_common = [&opts](CLI::App* sub, bool with_out) {
    sub->add_option("--config", opts.config, "Run document (JSON)")
        ->required();
    if (with_out) {
      sub->add_option("--out", opts.out,
                      "Output directory (default: output.dir, then ./out)");
    }
    sub->add_option("--seed", opts.seed,
                    "Seed for the tuner and check sampling (default: tune.seed)");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "Run one closed-loop rollout");
  CLI::App* tune = app.add_subcommand("tune", "Tune the controller gains");
  CLI::App* check = app.add_subcommand("check", "Run the invariant checks");
  add_common(simulate, true);
  add_common(tune, true);
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (simulate->parsed()) return cmd_simulate(opts);
  if (tune->parsed()) return cmd_tune(opts);
  return cmd_check(opts);
}
