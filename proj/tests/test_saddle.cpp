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


#include <numeric>

#include "doctest.h"
#include "ellhill/polynomial.hpp"
#include "ellhill/saddle.hpp"
#include "fixtures.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::reference;

}  // namespace

TEST_CASE("six saddles are stationary points in their classes") {
  for (const cplx k : {cplx(0.01), ellhill::testing::kFigureK}) {
    const PotentialParams p = reference(k);
    const std::vector<SaddlePoint> s = find_saddles(p);
    REQUIRE(s.size() == 6);
    for (const SaddlePoint& sp : s) {
      const double h = 1e-5;
      const cplx du = (eval_u(sp.x_star + h, p) - eval_u(sp.x_star - h, p)) / (2.0 * h);
      CHECK(std::abs(du) < 1e-6 * std::max(1.0, std::abs(sp.u_star)));
      const cplx sn = jacobi(sp.x_star, p.modulus()).sn;
      CHECK(std::abs(sn * sn - sp.z_star) < 1e-9 * std::max(1.0, std::abs(sp.z_star)));
      CHECK(std::abs(eval_u(sp.x_star, p) - sp.u_star) < 1e-9 * std::max(1.0, std::abs(sp.u_star)));
      CHECK(sp.cls == saddle_class_of(sp.index));
    }
  }
}

TEST_CASE("Q6 roots satisfy Vieta") {
  const PotentialParams p = reference(ellhill::testing::kFigureK);
  const auto c = q6_coefficients(p);
  const std::vector<SaddlePoint> s = find_saddles(p);
  cplx sum = 0.0, prod = 1.0;
  for (const SaddlePoint& sp : s) {
    sum += sp.z_star;
    prod *= sp.z_star;
  }
  // Highest degree first.
  CHECK(std::abs(sum + c[1] / c[0]) < 1e-9 * std::abs(c[1] / c[0]));
  CHECK(std::abs(prod - c[6] / c[0]) < 1e-9 * std::abs(c[6] / c[0]));
}

TEST_CASE("Cauchy g-coefficients agree with finite differences") {
  const PotentialParams p = reference(0.01);
  for (const SaddlePoint& sp : find_saddles(p)) {
    const SeriesExpansion g = g_coefficients(sp, p, 3);
    const double h = 1e-3;
    auto u = [&](double t) { return eval_u(sp.x_star + t, p); };
    const cplx d2 = (u(h) - 2.0 * u(0) + u(-h)) / (h * h);
    const cplx d3 = (u(2 * h) - 2.0 * u(h) + 2.0 * u(-h) - u(-2 * h)) / (2 * h * h * h);
    CHECK(std::abs(g.coefficients[0] - sp.u_star) < 1e-9 * std::abs(sp.u_star));
    CHECK(std::abs(g.coefficients[1]) < 1e-7 * std::max(1.0, std::abs(sp.u_star)));
    CHECK(std::abs(g.coefficients[2] - d2 / 2.0) < 1e-4 * std::abs(g.coefficients[2]));
    CHECK(std::abs(g.coefficients[3] - d3 / 6.0) <
          1e-3 * (std::abs(g.coefficients[3]) + std::abs(g.coefficients[2])));
  }
}

TEST_CASE("leading-order saddle formulas at small k") {
  const PotentialParams p = reference(0.001);
  const std::vector<SaddlePoint> s = find_saddles(p);
  for (int pair = 1; pair <= 3; ++pair) {
    for (const auto& ser : saddle_series(p, pair)) {
      const SaddlePoint& sp = s[ser.index - 1];
      const cplx t = ser.z_star.variable == SeriesVariable::kK ? p.k() : p.m();
      CHECK(std::abs(ser.z_star.evaluate(t) - sp.z_star) < 1e-2 * std::abs(sp.z_star));
      CHECK(std::abs(ser.u_star - sp.u_star) < 1e-2 * std::abs(sp.u_star));
      CHECK(std::abs(ser.g2 - sp.g2) < 1e-2 * std::abs(sp.g2));
    }
  }
}

TEST_CASE("degenerate couplings") {
  const PotentialParams lame = PotentialParams::from_couplings({1.0, 0.0, 0.0, 0.0}, 0.3);
  const SaddleSearch s = find_saddles_tolerant(lame);
  CHECK(s.degenerate);
  CHECK_FALSE(s.warnings.empty());
  try {
    // The K-class pair needs b2 != b3.
    saddle_series(lame, 2);
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
  CHECK_THROWS_AS(saddle_series(reference(0.01), 4), Error);
}

TEST_CASE("polynomial roots") {
  // (z - 1)(z + 2)(z - i)
  const std::vector<cplx> c = {1.0, cplx(1, -1), cplx(-2, -1), cplx(0, 2)};
  std::vector<cplx> r = poly::roots(c);
  REQUIRE(r.size() == 3);
  for (const cplx z : {cplx(1), cplx(-2), kI}) {
    double best = 1e9;
    for (const cplx w : r) best = std::min(best, std::abs(w - z));
    CHECK(best < 1e-12);
  }
}
