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

#include <array>
#include <cstddef>
#include <string_view>
#include <variant>

namespace quadsmc {

/// Tracked channels, in sliding-surface order.
enum class Channel : std::size_t { phi = 0, theta, psi, x, y, z };

inline constexpr std::size_t kChannelCount = 6;

inline constexpr std::array<std::string_view, kChannelCount> kChannelNames = {
    "phi", "theta", "psi", "x", "y", "z"};

/// State index of the value tracked by channel `c` (its rate is +1).
constexpr std::size_t state_index_of(Channel c) {
  return 2 * static_cast<std::size_t>(c);
}

/// Desired value with its first and second time derivatives.
struct ChannelReference {
  double value = 0.0;
  double rate = 0.0;
  double accel = 0.0;

  friend bool operator==(const ChannelReference&,
                         const ChannelReference&) = default;
};

struct ReferencePoint {
  std::array<ChannelReference, kChannelCount> ch{};

  ChannelReference& operator[](Channel c) {
    return ch[static_cast<std::size_t>(c)];
  }
  const ChannelReference& operator[](Channel c) const {
    return ch[static_cast<std::size_t>(c)];
  }

  friend bool operator==(const ReferencePoint&,
                         const ReferencePoint&) = default;
};

/// amplitude * sin(frequency * t + phase)
struct SineProfile {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
};

/// slope * t
struct RampProfile {
  double slope = 0.0;
};

struct ConstantProfile {
  double value = 0.0;
};

struct ZeroProfile {};

using ChannelProfile =
    std::variant<ZeroProfile, ConstantProfile, RampProfile, SineProfile>;

struct TrajectorySpec {
  std::array<ChannelProfile, kChannelCount> channels{};

  ChannelProfile& operator[](Channel c) {
    return channels[static_cast<std::size_t>(c)];
  }
  const ChannelProfile& operator[](Channel c) const {
    return channels[static_cast<std::size_t>(c)];
  }

  /// Throws PreconditionError if any parameter is non-finite.
  void validate() const;
};

ChannelReference sample(const ChannelProfile& profile, double t);

/// Value, analytic rate and analytic acceleration of every channel at t >= 0.
ReferencePoint sample(const TrajectorySpec& spec, double t);

}  // namespace quadsmc
