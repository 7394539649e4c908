// Copyright 2026 The chanres Authors
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

#include <cstdint>
#include <string>
#include <vector>

#include "chanres/monotones.hpp"

namespace chanres::commands {

struct SweepRow {
  double theta = 0.0;
  double c_r_i = 0.0;
  double c_r_b_lower = 0.0;
  double gap = 0.0;
};

// Rotation channels exp(-i theta sigma_y) on a uniform grid of `steps`
// points over [theta_min, theta_max]. Throws NumericalError if any value
// is not finite.
std::vector<SweepRow> sweep_rotation(double theta_min, double theta_max, int steps,
                                     const monotones::SearchConfig& cfg);

// Header "theta,c_r_i,c_r_b_lower,gap", 8 decimals, LF endings.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

struct VerifyOptions {
  std::uint64_t seed = 1;
  int trials = 20;
  // Negative control: every tolerance becomes -infinity so each check fails.
  bool corrupt_tolerances = false;
};

struct SuiteResult {
  std::string name;
  int checks = 0;
  int violations = 0;
  double worst_excess = 0.0;   // largest (measured - allowed) seen
  std::string worst_instance;  // JSON object describing that case
};

// Runs the invariant battery of every module.
std::vector<SuiteResult> run_verify(const VerifyOptions& opt);

// JSON document with every suite that recorded a violation.
std::string verify_diagnostics_json(const std::vector<SuiteResult>& suites);

}  // namespace chanres::commands
