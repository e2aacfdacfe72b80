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
#include "ellhill/floquet.hpp"
#include "fixtures.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::kFigureK;
using ellhill::testing::reference;

// Transfer matrix of psi'' = (u - lambda) psi along x0 + s d, s in [0, 1],
// by classical RK4 with n steps.
std::array<cplx, 4> rk4_transfer(const PotentialParams& p, cplx lambda, cplx x0,
                                 cplx d, int n) {
  auto rhs = [&](cplx x, const std::array<cplx, 4>& y) {
    const cplx q = (eval_u(x, p) - lambda) * d;
    return std::array<cplx, 4>{d * y[2], d * y[3], q * y[0], q * y[1]};
  };
  std::array<cplx, 4> y{1.0, 0.0, 0.0, 1.0};  // psi1, psi2, psi1', psi2'
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    const cplx x = x0 + d * (i * h);
    auto add = [](const std::array<cplx, 4>& a, const std::array<cplx, 4>& b, double s) {
      return std::array<cplx, 4>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
    };
    const auto k1 = rhs(x, y);
    const auto k2 = rhs(x + 0.5 * h * d, add(y, k1, 0.5 * h));
    const auto k3 = rhs(x + 0.5 * h * d, add(y, k2, 0.5 * h));
    const auto k4 = rhs(x + h * d, add(y, k3, h));
    for (int j = 0; j < 4; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return y;
}

}  // namespace

TEST_CASE("free particle over 2K") {
  const PotentialParams p = PotentialParams::from_couplings({}, 0.2);
  const SpectralContext ctx = make_spectral_context(p);
  for (const cplx l : {cplx(1.0), cplx(16.0), cplx(3.0, 2.0)}) {
    MonodromyOptions opts;
    opts.mu_seed = std::sqrt(l);
    const MonodromyResult m = monodromy(
        p, l, PeriodTag::k2K, default_base_point(p, PeriodTag::k2K, ctx), ctx, opts);
    CHECK(std::abs(m.mu_plus - std::sqrt(l)) < 1e-8);
    CHECK(std::abs(m.mu_minus + std::sqrt(l)) < 1e-8);
    CHECK(std::abs(m.det - 1.0) < 1e-8);
  }
}

TEST_CASE("monodromy trace against an RK4 transfer matrix") {
  const PotentialParams p = reference(0.3);
  const SpectralContext ctx = make_spectral_context(p);
  const auto& mod = p.modulus();
  const cplx lambda(50.0, 4.0);
  const cplx base = default_base_point(p, PeriodTag::k2K, ctx);
  const MonodromyResult m = monodromy(p, lambda, PeriodTag::k2K, base, ctx);
  // The library's base point lies on the line Im x = K'/2 used here.
  CHECK(std::abs(base.imag() - 0.5 * mod.K_prime.real()) < 1e-12);
  const auto y = rk4_transfer(p, lambda, base, 2.0 * mod.K, 4000);
  const cplx tr_lib = m.matrix[0] + m.matrix[3];
  const cplx tr_rk4 = y[0] + y[3];
  CHECK(std::abs(tr_lib - tr_rk4) < 1e-7 * std::max(1.0, std::abs(tr_rk4)));
  CHECK(std::abs(m.det - 1.0) < 1e-8);
}

TEST_CASE("Wronskian is conserved over every period") {
  for (const cplx k : {cplx(0.01), kFigureK}) {
    const PotentialParams p = reference(k);
    const SpectralContext ctx = make_spectral_context(p);
    MonodromyOptions opts;
    opts.check_winding = false;
    for (const PeriodTag t : {PeriodTag::k2K, PeriodTag::k2iKp, PeriodTag::k2K2iKp}) {
      const MonodromyResult m =
          monodromy(p, cplx(20.0, 3.0), t, default_base_point(p, t, ctx), ctx, opts);
      CHECK(std::abs(m.det - 1.0) < 1e-8);
      CHECK(std::abs(m.rho_plus * m.rho_minus - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("canonical coordinate shifts by C_T") {
  std::mt19937_64 rng(31);
  for (const cplx k : {cplx(0.1), cplx(0.3, 0.2), kFigureK}) {
    const EllipticModulus mod = EllipticModulus::from_k(k);
    for (const FloquetCase c : {FloquetCase::kA, FloquetCase::kC}) {
      const cplx x = ellhill::testing::random_in_disk(rng, 0.3) + 0.5 * mod.K + 0.4 * kI * mod.K_prime;
      CHECK(std::abs(canonical_shift(c, x, mod) - canonical_period(c, mod)) < 1e-9);
    }
  }
  const EllipticModulus mod = EllipticModulus::from_k(0.3);
  CHECK(std::abs(canonical_period(FloquetCase::kA, mod) - kI * kPi) < 1e-15);
  CHECK(std::abs(canonical_period(FloquetCase::kB, mod) - kPi / mod.k_prime) < 1e-15);
  CHECK(std::abs(canonical_period(FloquetCase::kC, mod) - 2.0 * mod.K) < 1e-15);
}

TEST_CASE("multiplier to index round trip") {
  std::mt19937_64 rng(32);
  const EllipticModulus mod = EllipticModulus::from_k(kFigureK);
  for (const FloquetCase c : {FloquetCase::kA, FloquetCase::kB, FloquetCase::kC}) {
    const cplx ct = canonical_period(c, mod);
    const double eps = c == FloquetCase::kC ? 0.0 : 1.0;
    for (int i = 0; i < 20; ++i) {
      const cplx mu = ellhill::testing::random_in_disk(rng, 3.0);
      const cplx rho = std::exp(kI * mu * ct + kI * kPi * eps / 2.0);
      CHECK(std::abs(mu_from_multiplier(c, rho, mod, mu) - mu) < 1e-9);
      // Without a seed the index is known modulo the lattice.
      const cplx q = (mu_from_multiplier(c, rho, mod) - mu) / index_lattice(c, mod);
      CHECK(std::abs(q - std::round(q.real())) < 1e-9);
    }
  }
}

TEST_CASE("duality maps case A onto case B") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 10; ++i) {
    DualityData a;
    a.k = ellhill::testing::random_in_disk(rng, 0.5);
    a.k_prime = std::sqrt(1.0 - a.k * a.k);
    a.sqrt_lambda2 = ellhill::testing::random_in_disk(rng, 10.0) + 1.0;
    a.mu = ellhill::testing::random_in_disk(rng, 1.0);
    a.delta = series_case_a(a.mu, a.k * a.k, a.sqrt_lambda2);
    const DualityData b = duality_transform(a);
    const cplx direct = series_case_b(b.mu, b.k * b.k, b.k_prime, b.sqrt_lambda2);
    CHECK(std::abs(b.delta - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("series inversion") {
  const PotentialParams p = reference(0.01);
  const SpectralContext ctx = make_spectral_context(p);
  for (const FloquetCase c : {FloquetCase::kA, FloquetCase::kB}) {
    const cplx mu = c == FloquetCase::kA ? cplx(0.0, -0.5) : 0.5 * p.modulus().k_prime;
    const cplx inc = eigenvalue_series(c, mu, p, 2, ctx, RegimePolicy::kIgnore);
    const cplx back = invert_eigenvalue_series(c, inc, p, ctx);
    CHECK(std::abs(back - mu) < 1e-9);
  }
}

TEST_CASE("case C after calibration") {
  const PotentialParams p = reference(0.01);
  SpectralContext ctx = make_spectral_context(p);
  CHECK_THROWS_AS(eigenvalue_series(FloquetCase::kC, 20.0, p, 2, ctx), Error);
  ctx.c0 = calibrate_c0(p, ctx);
  const cplx l = 400.0 * cplx(1.0, 0.1);
  const MonodromyResult m = monodromy(
      p, l, PeriodTag::k2K, default_base_point(p, PeriodTag::k2K, ctx), ctx);
  CHECK(std::abs(m.mu_plus * m.mu_plus - (l - *ctx.c0)) < 1e-2 * std::abs(l));
  CHECK(index_relation_check(FloquetCase::kC, m.mu_plus, m.mu_minus, p));
  // Small indices are outside the large-lambda regime.
  try {
    eigenvalue_series(FloquetCase::kC, 0.5, p, 2, ctx);
    FAIL("expected RegimeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRegimeViolation);
  }
}

TEST_CASE("monodromy input errors") {
  const PotentialParams p = reference(0.3);
  const SpectralContext ctx = make_spectral_context(p);
  // A base point on a pole.
  CHECK_THROWS_AS(monodromy(p, 10.0, PeriodTag::k2K, 0.0, ctx), Error);
  const PotentialParams free = PotentialParams::from_couplings({}, 0.0);
  CHECK_THROWS_AS(period_value(PeriodTag::k2iKp, free.modulus()), Error);
}
