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
#include "ellhill/turning.hpp"
#include "fixtures.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::kFigureK;
using ellhill::testing::reference;

}  // namespace

TEST_CASE("turning points solve u(z) = lambda") {
  for (const cplx k : {cplx(0.01), kFigureK}) {
    const PotentialParams p = reference(k);
    for (const cplx l : {cplx(5.0, 1.0), cplx(-40.0, 12.0), cplx(300.0, -80.0)}) {
      const TurningPointSet t = find_turning_points(p, l);
      for (const cplx z : t.roots) {
        CHECK(std::abs(eval_u_of_z(z, p) - l) < 1e-7 * std::max(1.0, std::abs(l)));
      }
    }
  }
}

TEST_CASE("cross ratio is Moebius invariant") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    std::array<cplx, 4> z;
    for (cplx& v : z) v = ellhill::testing::random_in_disk(rng, 5.0);
    const cplx a = ellhill::testing::random_in_disk(rng, 2.0) + 0.1;
    const cplx b = ellhill::testing::random_in_disk(rng, 2.0);
    const cplx c = ellhill::testing::random_in_disk(rng, 2.0);
    const cplx d = ellhill::testing::random_in_disk(rng, 2.0) + 3.0;
    auto mob = [&](cplx w) { return (a * w + b) / (c * w + d); };
    const cplx before = cross_ratio(z[0], z[1], z[2], z[3]);
    const cplx after = cross_ratio(mob(z[0]), mob(z[1]), mob(z[2]), mob(z[3]));
    CHECK(std::abs(before - after) < 1e-9 * std::max(1.0, std::abs(before)));
  }
  CHECK_THROWS_AS(cross_ratio(1.0, 2.0, 2.0, 1.0), Error);
}

TEST_CASE("near z*5: hierarchy and cross-ratio estimate") {
  const PotentialParams p = reference(0.01);
  const auto& b = p.b();
  const TurningContext ctx = make_turning_context(p);
  const cplx delta = 1e-4 * p.coupling_scale() * std::abs(p.k());
  const TurningPointSet t = find_turning_points(p, *ctx.u5 + delta, ctx);
  CHECK(t.regime == TurningRegime::kNear5);
  const auto& z = t.roots;
  CHECK(std::abs(z[2] - z[1]) / std::abs(z[1] - z[0]) < 0.1);
  const double pred = 2.0 * std::sqrt(std::abs(delta)) /
                      std::abs(std::pow(b[0] - b[1], 0.25) *
                               std::pow(b[2] - b[3], 0.25) * std::sqrt(p.k()));
  CHECK(std::abs(t.cross_ratio) / pred == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("large lambda: cross ratio tends to k^2/(1-k^2)") {
  const PotentialParams p = reference(kFigureK);
  const TurningContext ctx = make_turning_context(p);
  const TurningPointSet t =
      find_turning_points(p, *ctx.u_anchor + 1e3 * p.coupling_scale(), ctx);
  CHECK(t.regime == TurningRegime::kLargeLambda);
  const cplx m = p.m();
  CHECK(std::abs(t.cross_ratio) / std::abs(m / (1.0 - m)) ==
        doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("reference values at k = 0.2 e^{i pi/4}") {
  const PotentialParams p = reference(kFigureK);
  const TurningContext ctx = make_turning_context(p);
  const TurningPointSet t = find_turning_points(p, *ctx.u5 + cplx(0.1, 0.1), ctx);
  CHECK(t.roots[3].real() == doctest::Approx(-2.9).epsilon(0.05 / 2.9));
  CHECK(t.roots[3].imag() == doctest::Approx(-64.3).epsilon(0.05 / 64.3));
}

TEST_CASE("trajectories are continuous and end where expected") {
  const PotentialParams p = reference(kFigureK);
  const TurningContext ctx = make_turning_context(p);
  const TrajectoryRecord lin =
      trace_trajectory(p, LinearControl{cplx(0.1, 0.1)}, 500, ctx);
  REQUIRE(lin.lambda_path.size() == 500);
  for (int r = 0; r < 4; ++r) {
    const auto& path = lin.root_paths[r];
    for (size_t i = 1; i < path.size(); ++i) {
      // No relabelling jumps between consecutive samples.
      double nearest = INFINITY;
      for (int q = 0; q < 4; ++q) {
        nearest = std::min(nearest, std::abs(lin.root_paths[q][i] - path[i - 1]));
      }
      CHECK(std::abs(path[i] - path[i - 1]) <= nearest + 1e-12);
    }
  }
  const cplx z2 = lin.root_paths[1].back(), z3 = lin.root_paths[2].back();
  CHECK(std::abs(z2 - *ctx.z6) < 2.0 * std::abs(z3 - z2));
  CHECK(std::abs(z3 - *ctx.z6) < 2.0 * std::abs(z3 - z2));
  // z1 stays near its start along the linear control.
  CHECK(std::abs(lin.root_paths[0].back() - lin.root_paths[0].front()) < 0.2);

  const TrajectoryRecord ex =
      trace_trajectory(p, ExponentialControl{cplx(0.1, 0.1)}, 500, ctx);
  CHECK(std::abs(ex.control_samples.back() - 0.9) < 1e-12);
  std::vector<cplx> ends;
  for (int r = 0; r < 4; ++r) ends.push_back(ex.root_paths[r].back());
  auto near = [&](auto pred) {
    return std::any_of(ends.begin(), ends.end(), pred);
  };
  CHECK(near([](cplx z) { return std::abs(z) < 5e-2; }));
  CHECK(near([](cplx z) { return std::abs(z - 1.0) < 5e-2; }));
  CHECK(near([&](cplx z) { return std::abs(z * p.m() - 1.0) < 5e-2; }));
  CHECK(near([](cplx z) { return std::abs(z) > 1e3; }));
}

TEST_CASE("turning errors") {
  const PotentialParams zero = PotentialParams::from_couplings({}, 0.3);
  CHECK_THROWS_AS(find_turning_points(zero, 1.0), Error);
  const PotentialParams p = reference(0.3);
  CHECK_THROWS_AS(turning_series(p, TurningRegime::kNear5, 0.1, -1), Error);
}
