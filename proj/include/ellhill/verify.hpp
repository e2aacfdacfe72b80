// Copyright 2026 The ellhill Authors.
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

// Invariant suites and round trips run against one parameter set.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellhill/potential.hpp"

namespace ellhill {

enum class SuiteStatus { kPass, kFail, kSkipped };

const char* suite_status_name(SuiteStatus s);

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::kSkipped;
  double residual = 0.0;   // worst observed error measure
  double tolerance = 0.0;  // bound the residual is held to
  std::string detail;
};

// kStrict divides every tolerance of the numeric identities by 10; the
// asymptotic comparisons keep their bounds.
enum class ToleranceProfile { kDefault, kStrict };

// Identity suites: elliptic identities, forms of u, Q6 Vieta and
// stationarity, Q4 residuals, cross-ratio Moebius invariance, phi
// consistency, Wronskian conservation, free particle, duality.
std::vector<SuiteResult> run_property_suites(const PotentialParams& p,
                                             std::uint64_t seed,
                                             ToleranceProfile profile);

// Asymptotic suites: saddle series, Floquet round trips A and B, case C.
// Skipped where the couplings are not generic.
std::vector<SuiteResult> run_series_suites(const PotentialParams& p,
                                           ToleranceProfile profile);

// Report JSON with one record per suite and the overall verdict.
std::string verification_report_json(const std::vector<SuiteResult>& suites);

bool all_passed(const std::vector<SuiteResult>& suites);

}  // namespace ellhill
