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


#include "doctest.h"
#include "ellhill/export.hpp"
#include "ellhill/verify.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::reference;

const SuiteResult& find(const std::vector<SuiteResult>& v, const std::string& name) {
  for (const auto& s : v) {
    if (s.name == name) return s;
  }
  FAIL("missing suite " << name);
  return v.front();
}

}  // namespace

TEST_CASE("property suites pass at both reference parameter sets") {
  for (const cplx k : {cplx(0.01), ellhill::testing::kFigureK}) {
    for (const auto prof : {ToleranceProfile::kDefault, ToleranceProfile::kStrict}) {
      for (const SuiteResult& s : run_property_suites(reference(k), 42, prof)) {
        INFO(s.name << ": " << s.detail << " residual " << s.residual);
        CHECK(s.status == SuiteStatus::kPass);
        CHECK(s.residual <= s.tolerance);
      }
    }
  }
}

TEST_CASE("strict profile tightens tolerances") {
  const auto d = run_property_suites(reference(0.01), 1, ToleranceProfile::kDefault);
  const auto s = run_property_suites(reference(0.01), 1, ToleranceProfile::kStrict);
  REQUIRE(d.size() == s.size());
  for (size_t i = 0; i < d.size(); ++i) CHECK(s[i].tolerance < d[i].tolerance);
}

TEST_CASE("series suites skip on equal couplings") {
  auto sb = ellhill::testing::reference_sqrt_b();
  sb[1] = sb[0];
  const PotentialParams p = PotentialParams::from_sqrt_couplings(sb, 0.01);
  const auto series = run_series_suites(p, ToleranceProfile::kDefault);
  CHECK(find(series, "saddle_series").status == SuiteStatus::kSkipped);
  CHECK(find(series, "round_trip_A").status == SuiteStatus::kSkipped);
  CHECK(find(series, "round_trip_B").status == SuiteStatus::kSkipped);
  for (const SuiteResult& s : run_property_suites(p, 3, ToleranceProfile::kDefault)) {
    INFO(s.name << ": " << s.detail);
    CHECK(s.status == SuiteStatus::kPass);
  }
}

TEST_CASE("report JSON") {
  const std::vector<SuiteResult> v = {
      {"a", SuiteStatus::kPass, 1e-12, 1e-9, "x"},
      {"b", SuiteStatus::kSkipped, 0.0, 1e-9, "y"}};
  const auto j = nlohmann::json::parse(verification_report_json(v));
  CHECK(j["all_passed"].get<bool>());
  CHECK(j["suites"][1]["status"] == "SKIPPED");
  CHECK(all_passed(v));
}

TEST_CASE("exports are deterministic and complete") {
  const PotentialParams p = reference(0.01);
  const std::string a = saddles_json(p);
  CHECK(a == saddles_json(p));
  const auto j = nlohmann::json::parse(a);
  CHECK(j["format_version"] == kExportFormatVersion);
  REQUIRE(j["saddles"].size() == 6);
  for (const auto& s : j["saddles"]) {
    CHECK(s["z_star"].is_array());
    CHECK(s["series"]["rel_err_z"].get<double>() < 1e-2);
  }
  const PotentialParams lame = PotentialParams::from_couplings({1.0, 0.0, 0.0, 0.0}, 0.3);
  const auto l = nlohmann::json::parse(saddles_json(lame));
  CHECK(l["degenerate"].get<bool>());
  CHECK_FALSE(l["warnings"].empty());
}

TEST_CASE("shortest round-trip doubles") {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.9}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}
