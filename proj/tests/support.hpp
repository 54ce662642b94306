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

#include <random>
#include <string>

#include "quadsmc/config.hpp"
#include "quadsmc/control.hpp"
#include "quadsmc/model.hpp"

namespace quadsmc::testing {

/// Vehicle parameters of the reference airframe.
inline QuadParams reference_params() {
  QuadParams p;
  p.m = 0.486, p.d = 0.25, p.g = 9.8;
  p.Ix = 3.8278e-3, p.Iy = 3.8288e-3, p.Iz = 7.5666e-3, p.Jr = 2.8385e-5;
  p.Kfax = 5.567e-4, p.Kfay = 5.567e-4, p.Kfaz = 6.543e-4;
  p.Kftx = 5.567e-4, p.Kfty = 5.567e-4, p.Kftz = 6.345e-4;
  p.KF = 2.9842e-5, p.KM = 3.2320e-7;
  p.beta0 = 189.63, p.beta1 = 6.0612, p.beta2 = 0.0122, p.b_motor = 280.19;
  return p;
}

inline GainSet reference_gains() { return GainSet::uniform(0.2285737, 0.1, 0.1); }

inline std::string config_path(const std::string& name) {
  return std::string(QUADSMC_CONFIG_DIR) + "/" + name + ".json";
}

inline RunConfig bundled(const std::string& name) {
  return load_config(config_path(name));
}

/// Seeded uniform sampler.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace quadsmc::testing
