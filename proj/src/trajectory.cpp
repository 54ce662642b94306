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

#include "quadsmc/trajectory.hpp"

#include <cmath>
#include <string>

#include "quadsmc/errors.hpp"

namespace quadsmc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite_profile(const ChannelProfile& p) {
  return std::visit(
      overloaded{
          [](const ZeroProfile&) { return true; },
          [](const ConstantProfile& c) { return std::isfinite(c.value); },
          [](const RampProfile& r) { return std::isfinite(r.slope); },
          [](const SineProfile& s) {
            return std::isfinite(s.amplitude) && std::isfinite(s.frequency) &&
                   std::isfinite(s.phase);
          },
      },
      p);
}

}  // namespace

void TrajectorySpec::validate() const {
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    if (!finite_profile(channels[i])) {
      throw PreconditionError("trajectory channel '" +
                              std::string(kChannelNames[i]) +
                              "' has non-finite parameters");
    }
  }
}

ChannelReference sample(const ChannelProfile& profile, double t) {
  return std::visit(
      overloaded{
          [](const ZeroProfile&) { return ChannelReference{}; },
          [](const ConstantProfile& c) {
            return ChannelReference{c.value, 0.0, 0.0};
          },
          [t](const RampProfile& r) {
            return ChannelReference{r.slope * t, r.slope, 0.0};
          },
          [t](const SineProfile& s) {
            const double arg = s.frequency * t + s.phase;
            const double w = s.frequency;
            return ChannelReference{s.amplitude * std::sin(arg),
                                    s.amplitude * w * std::cos(arg),
                                    -s.amplitude * w * w * std::sin(arg)};
          },
      },
      profile);
}

ReferencePoint sample(const TrajectorySpec& spec, double t) {
  if (!(t >= 0.0)) throw PreconditionError("sample: t must be >= 0");
  ReferencePoint ref;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    ref.ch[i] = sample(spec.channels[i], t);
  }
  return ref;
}

}  // namespace quadsmc
