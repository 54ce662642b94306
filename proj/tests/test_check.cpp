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

#include "quadsmc/check.hpp"
#include "support.hpp"

using namespace quadsmc;
using quadsmc::testing::bundled;
using quadsmc::testing::reference_gains;
using quadsmc::testing::reference_params;

TEST_CASE("all checks pass on the bundled configs") {
  for (const char* name : {"hover", "fig3_attitude", "fig7_position"}) {
    CAPTURE(name);
    const auto results = run_checks(bundled(name), 0);
    REQUIRE(results.size() == 4);
    for (const CheckResult& r : results) {
      CAPTURE(r.name);
      CHECK(r.passed);
      CHECK(r.measured < r.tolerance);
    }
  }
}

TEST_CASE("corrupted lumped constant breaks only the dual-form check") {
  RunConfig c = bundled("fig3_attitude");
  c.constant_overrides["a1"] = 0.5;
  const auto results = run_checks(c, 0);
  CHECK(results[0].name == "dual_form_equivalence");
  CHECK_FALSE(results[0].passed);
  CHECK(results[1].passed);
  CHECK(results[2].passed);
  // The controller shares the corrupted model, so cancellation still holds.
  CHECK(results[3].passed);
}

TEST_CASE("oracles are deterministic in the seed") {
  const QuadParams p = reference_params();
  const DerivedConstants c = derive_constants(p);
  CHECK(dual_form_max_difference(p, c, 100, 4) ==
        dual_form_max_difference(p, c, 100, 4));
  CHECK(mixer_max_relative_error(p, 100, 4) < kMixerTolerance);
  CHECK(rotation_max_orthonormality_error(100, 9) < kRotationTolerance);
  for (SwitchingKind k : {SwitchingKind::sign, SwitchingKind::saturation}) {
    CHECK(reaching_law_max_residual(p, c, reference_gains(), SwitchingLaw{k, 0.05},
                                    200, 1) < kReachingTolerance);
  }
}
