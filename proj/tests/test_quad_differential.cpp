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
#include "ellhill/quad_differential.hpp"
#include "fixtures.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::kFigureK;
using ellhill::testing::reference;

// Integral of sqrt(phi) along the straight segment a -> b by a midpoint
// rule in t = (1 - cos s)/2, continuing the root from sample to sample.
cplx segment_period(const QuadDifferential& q, cplx a, cplx b, int n) {
  cplx acc = 0.0, prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = kPi * (i + 0.5) / n;
    const double t = 0.5 * (1.0 - std::cos(s));
    const cplx z = a + (b - a) * t;
    cplx r = std::sqrt(phi(q, z));
    if (i > 0 && std::abs(r + prev) < std::abs(r - prev)) r = -r;
    prev = r;
    acc += r * (b - a) * 0.5 * std::sin(s) * (kPi / n);
  }
  return acc;
}

}  // namespace

TEST_CASE("phi is (u - lambda) over the squared Jacobian") {
  const PotentialParams p = reference(kFigureK);
  const cplx lambda(12.0, 3.0);
  const QuadDifferential q = QuadDifferential::make(p, lambda);
  const cplx m = p.m();
  for (const cplx z : {cplx(0.3, 0.4), cplx(-2.0, 1.0), cplx(7.0, -3.0)}) {
    const cplx jac2 = 4.0 * z * (1.0 - z) * (1.0 - m * z);
    // psi'' = (u - lambda) psi in x, so phi dz^2 = (u - lambda) dx^2.
    CHECK(std::abs(phi(q, z) * jac2 - (eval_u_of_z(z, p) - lambda)) <
          1e-8 * std::abs(lambda - eval_u_of_z(z, p)));
    const cplx w = 1.0 / z;
    CHECK(std::abs(phi_reciprocal(q, w) - phi(q, z) / std::pow(w, 4)) <
          1e-9 * std::abs(phi(q, z) / std::pow(w, 4)));
  }
  CHECK_THROWS_AS(phi(q, 0.0), Error);
  CHECK_THROWS_AS(phi(q, 1.0), Error);
}

TEST_CASE("WKB period between turning points") {
  const PotentialParams p = reference(kFigureK);
  const TurningContext ctx = make_turning_context(p);
  const QuadDifferential q = QuadDifferential::make(p, *ctx.u5 + cplx(0.1, 0.1), ctx);
  const auto& z = q.turning.roots;
  const cplx w = wkb_period(q, 1, 2);
  const cplx oracle = segment_period(q, z[1], z[2], 20000);
  CHECK(std::abs(std::abs(w) - std::abs(oracle)) < 1e-4 * std::abs(oracle));
  CHECK(std::abs(std::abs(wkb_period(q, 2, 1)) - std::abs(w)) < 1e-9 * std::abs(w));
  CHECK_THROWS_AS(wkb_period(q, 1, 1), Error);
  CHECK_THROWS_AS(wkb_period(q, 0, 4), Error);
}

TEST_CASE("foliation lines keep a constant phase") {
  const PotentialParams p = reference(kFigureK);
  const TurningContext ctx = make_turning_context(p);
  const QuadDifferential q = QuadDifferential::make(p, *ctx.u5 + cplx(0.1, 0.1), ctx);
  const double theta = std::arg(wkb_period(q, 1, 2));
  const double radius = 1e-3 * std::abs(q.turning.roots[2] - q.turning.roots[1]);
  int critical = 0;
  for (int t = 0; t < 4; ++t) {
    for (const LaunchPoint& lp : launch_points(q, t, theta, radius)) {
      FoliationOptions opts;
      opts.branch_sign = lp.branch_sign;
      opts.initial_length = lp.initial_length;
      const FoliationLine line = trace_foliation(q, lp.z, theta, 20.0, opts);
      REQUIRE(line.points.size() >= 2);
      // The polyline integral of sqrt(phi) is exact per chord (3-point
      // Gauss), so e^{-i theta} w stays real along a true theta-line.
      cplx w = 0.0, prev = std::sqrt(phi(q, line.points[0]));
      if (lp.branch_sign < 0) prev = -prev;
      double worst = 0.0;
      for (size_t i = 1; i < line.points.size(); ++i) {
        const cplx a = line.points[i - 1], dz = line.points[i] - a;
        const double g = std::sqrt(0.6);
        for (const auto& [t, wt] : {std::pair{0.5 * (1 - g), 5.0 / 18},
                                   std::pair{0.5, 8.0 / 18},
                                   std::pair{0.5 * (1 + g), 5.0 / 18}}) {
          cplx r = std::sqrt(phi(q, a + t * dz));
          if (std::abs(r + prev) < std::abs(r - prev)) r = -r;
          prev = r;
          w += wt * r * dz;
        }
        worst = std::max(worst, std::abs((w * std::polar(1.0, -theta)).imag()));
      }
      CHECK(worst < 1e-5 * (1.0 + line.wkb_length));
      for (size_t i = 1; i < line.arc.size(); ++i) CHECK(line.arc[i] >= line.arc[i - 1]);
      critical += line.terminal == FoliationTerminal::kCriticalPoint;
    }
  }
  // The saddle connection between z2 and z3 is found from both ends.
  CHECK(critical == 2);
}

TEST_CASE("local forms near a turning point") {
  const PotentialParams p = reference(kFigureK);
  const QuadDifferential q = QuadDifferential::make(p, cplx(30.0, 5.0));
  for (int t = 0; t < 4; ++t) {
    const LocalApprox a = local_approx(q, LocalSite::kTurning, t);
    const cplx z0 = q.turning.roots[t];
    const cplx z = z0 + 1e-5 * std::max(1.0, std::abs(z0)) * cplx(0.6, 0.8);
    CHECK(std::abs(a.evaluate(z) - phi(q, z)) < 1e-3 * std::abs(phi(q, z)));
  }
}
