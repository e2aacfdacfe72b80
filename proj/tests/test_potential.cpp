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


#include <random>

#include "doctest.h"
#include "ellhill/potential.hpp"
#include "ellhill/saddle.hpp"
#include "fixtures.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::reference;
using ellhill::testing::rel;

// Term-by-term evaluation of the four-coupling potential.
cplx direct_u(cplx x, const PotentialParams& p) {
  const JacobiTriple j = jacobi(x, p.modulus());
  const auto& b = p.b();
  const cplx m = p.m();
  return b[0] * m * j.sn * j.sn + b[1] * m * j.cn * j.cn / (j.dn * j.dn) +
         b[2] / (j.sn * j.sn) + b[3] * j.dn * j.dn / (j.cn * j.cn);
}

}  // namespace

TEST_CASE("both forms of u agree with the direct sum") {
  std::mt19937_64 rng(11);
  for (const cplx k : {cplx(0.01), ellhill::testing::kFigureK, cplx(0.5, 0.2)}) {
    const PotentialParams p = reference(k);
    for (int i = 0; i < 100; ++i) {
      const cplx x = ellhill::testing::random_in_disk(rng, 1.0) + cplx(0.3, 0.2);
      if (singularity_distance(x, p) < 1e-2) continue;
      const cplx d = direct_u(x, p);
      CHECK(rel(eval_u(x, p), d) < 1e-9 * std::max(1.0, std::abs(d)));
      CHECK(rel(eval_u_shifted(x, p), d) < 1e-9 * std::max(1.0, std::abs(d)));
      const cplx sn = jacobi(x, p.modulus()).sn;
      CHECK(rel(eval_u_of_z(sn * sn, p), d) < 1e-8 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST_CASE("derivative by central differences and periodicity") {
  const PotentialParams p = reference(ellhill::testing::kFigureK);
  const auto& mod = p.modulus();
  const double h = 1e-5;
  for (const cplx x : {cplx(0.4, 0.3), cplx(1.1, -0.7), cplx(-0.2, 1.3)}) {
    const cplx fd = (eval_u(x + h, p) - eval_u(x - h, p)) / (2.0 * h);
    CHECK(rel(eval_du(x, p), fd) < 1e-7);
    CHECK(rel(eval_u(x + 2.0 * mod.K, p), eval_u(x, p)) < 1e-9);
    CHECK(rel(eval_u(x + 2.0 * kI * mod.K_prime, p), eval_u(x, p)) < 1e-9);
    // Even potential.
    CHECK(rel(eval_u(-x, p), eval_u(x, p)) < 1e-9);
  }
}

TEST_CASE("couplings from square roots") {
  const PotentialParams p = reference(0.01);
  for (int s = 0; s < 4; ++s) {
    CHECK(std::abs(p.b()[s] - p.sqrt_b()[s] * p.sqrt_b()[s]) < 1e-14 * std::abs(p.b()[s]));
  }
  CHECK(p.generic());
  const PotentialParams lame = PotentialParams::from_couplings({1.0, 0.0, 0.0, 0.0}, 0.3);
  CHECK(lame.degenerate_23());
  CHECK_FALSE(lame.generic());
}

TEST_CASE("singular points raise Pole") {
  const PotentialParams p = reference(0.3);
  try {
    eval_u(0.0, p);
    FAIL("expected a pole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPole);
  }
  CHECK_THROWS_AS(eval_u(p.modulus().K, p), Error);
}

TEST_CASE("landscape marks singular cells") {
  const PotentialParams p = reference(0.3);
  const cplx K = p.modulus().K;
  // Grid nodes land on x = 0 and x = K.
  const LandscapeGrid g = landscape(p, {cplx(-K.real(), -1.0), cplx(K.real(), 1.0)}, 3, 3);
  REQUIRE(g.x_samples.size() == 9);
  int singular = 0;
  for (size_t i = 0; i < g.x_samples.size(); ++i) {
    if (std::isinf(g.magnitude[i])) {
      ++singular;
      CHECK(std::isnan(g.phase[i]));
    } else {
      CHECK(std::abs(g.magnitude[i] - std::abs(eval_u(g.x_samples[i], p))) < 1e-9 * g.magnitude[i]);
    }
  }
  CHECK(singular >= 1);
  CHECK_THROWS_AS(landscape(p, {0.0, 1.0}, 0, 3), Error);
}
