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


// The C interface against the C++ core it wraps.

#include <cstdlib>
#include <string>

#include "doctest.h"
#include "ellhill/ellhill.h"
#include "ellhill/export.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace {

using ellhill::cplx;

cplx to_cplx(eh_complex z) { return {z.re, z.im}; }
eh_complex to_eh(cplx z) { return {z.real(), z.imag()}; }

struct Handle {
  eh_params* p = nullptr;
  explicit Handle(cplx k) {
    eh_complex sb[4];
    const auto ref = ellhill::testing::reference_sqrt_b();
    for (int i = 0; i < 4; ++i) sb[i] = to_eh(ref[i]);
    REQUIRE(eh_params_create_sqrt(sb, to_eh(k), &p) == EH_OK);
  }
  ~Handle() { eh_params_free(p); }
};

std::string take(char* s) {
  std::string out(s);
  eh_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API: version, status names and null handling") {
  CHECK(std::string(eh_version()).size() > 0);
  CHECK(std::string(eh_status_name(EH_POLE)) == "Pole");
  eh_params_free(nullptr);
  eh_foliation_free(nullptr);
  eh_string_free(nullptr);
  eh_complex b[4] = {};
  CHECK(eh_params_create(b, {0.1, 0.0}, nullptr) == EH_INVALID_ARGUMENT);
  CHECK(std::string(eh_last_error()).size() > 0);
  eh_params* p = nullptr;
  CHECK(eh_params_create(b, {2.0, 0.0}, &p) == EH_DOMAIN);
  CHECK(p == nullptr);
}

TEST_CASE("C API: evaluation matches the core") {
  Handle h(ellhill::testing::kFigureK);
  const auto core = ellhill::testing::reference(ellhill::testing::kFigureK);
  eh_complex u;
  REQUIRE(eh_eval_u(h.p, {0.4, 0.3}, &u) == EH_OK);
  CHECK(to_cplx(u) == ellhill::eval_u(cplx(0.4, 0.3), core));
  CHECK(eh_eval_u(h.p, {0.0, 0.0}, &u) == EH_POLE);
  eh_complex z, x, us;
  REQUIRE(eh_saddle(h.p, 5, &z, &x, &us) == EH_OK);
  CHECK(eh_saddle(h.p, 7, &z, &x, &us) == EH_INVALID_ARGUMENT);
  int generic = 0;
  REQUIRE(eh_params_generic(h.p, &generic) == EH_OK);
  CHECK(generic == 1);
}

TEST_CASE("C API: exports are byte-identical to the core") {
  Handle h(0.01);
  const auto core = ellhill::testing::reference(0.01);
  char* out = nullptr;
  REQUIRE(eh_saddles_json(h.p, &out) == EH_OK);
  CHECK(take(out) == ellhill::saddles_json(core));
  const cplx l(30.0, 2.0);
  REQUIRE(eh_turning_json(h.p, to_eh(l), &out) == EH_OK);
  CHECK(take(out) == ellhill::turning_json(ellhill::find_turning_points(core, l)));
}

TEST_CASE("C API: trajectories, foliation and spectrum") {
  Handle h(ellhill::testing::kFigureK);
  char* out = nullptr;
  const eh_control c = eh_control_default(EH_CONTROL_EXPONENTIAL);
  CHECK(c.amplitude == 1000.0);
  REQUIRE(eh_trajectory_csv(h.p, &c, 50, &out) == EH_OK);
  const std::string csv = take(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
  CHECK(eh_trajectory_csv(h.p, nullptr, 50, &out) == EH_INVALID_ARGUMENT);

  eh_complex z5;
  REQUIRE(eh_saddle(h.p, 5, nullptr, nullptr, &z5) == EH_OK);
  const eh_complex l{z5.re + 0.1, z5.im + 0.1};
  eh_complex w;
  REQUIRE(eh_wkb_period(h.p, l, 1, 2, &w) == EH_OK);
  eh_foliation* f = nullptr;
  REQUIRE(eh_foliation_trace(h.p, l, std::atan2(w.im, w.re), 0.0, 20.0, 1e-9, &f) == EH_OK);
  CHECK(eh_foliation_count(f) == 12);
  REQUIRE(eh_foliation_manifest_json(f, nullptr, &out) == EH_OK);
  const auto manifest = nlohmann::json::parse(take(out));
  CHECK(manifest["lines"].size() == 12);
  CHECK(eh_foliation_line_csv(f, 12, &out) == EH_INVALID_ARGUMENT);
  eh_foliation_free(f);

  const eh_complex lambdas[] = {{400.0, 40.0}};
  REQUIRE(eh_spectrum_json(h.p, EH_PERIOD_2K, lambdas, 1, 1, &out) == EH_OK);
  const auto spectrum = nlohmann::json::parse(take(out));
  CHECK(spectrum["records"][0]["residual"].get<double>() < 1e-8);
  REQUIRE(eh_floquet_contour_csv(h.p, EH_PERIOD_2IKP, &out) == EH_OK);
  CHECK(take(out).rfind("re_x,im_x,re_z,im_z\n", 0) == 0);
}

TEST_CASE("C API: verification report") {
  Handle h(0.01);
  char* out = nullptr;
  int passed = -1;
  REQUIRE(eh_verify_json(h.p, 7, EH_TOL_DEFAULT, &out, &passed) == EH_OK);
  const auto report = nlohmann::json::parse(take(out));
  CHECK(report["all_passed"].get<bool>() == (passed == 1));
  for (const auto& s : report["suites"]) {
    CHECK(s.contains("residual"));
    CHECK(s.contains("tolerance"));
  }
}
