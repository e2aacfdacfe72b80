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


// Jacobi functions and K against 50-digit Boost values. Complex arguments
// at real modulus go through the imaginary-argument addition formulas;
// complex moduli are checked by quadrature and by the defining ODE.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "doctest.h"
#include "ellhill/elliptic.hpp"
#include "fixtures.hpp"

namespace {

using namespace ellhill;
using ellhill::testing::random_in_disk;
using Big = boost::multiprecision::cpp_bin_float_50;

struct RealTriple {
  double sn, cn, dn;
};

RealTriple boost_jacobi(double k, double u) {
  Big cn, dn;
  const Big sn = boost::math::jacobi_elliptic(Big(k), Big(u), &cn, &dn);
  return {static_cast<double>(sn), static_cast<double>(cn),
          static_cast<double>(dn)};
}

// sn, cn, dn of u + iv at real k from real-argument values.
JacobiTriple addition_oracle(double k, double u, double v) {
  const double kp = std::sqrt(1.0 - k * k);
  const RealTriple a = boost_jacobi(k, u);
  const RealTriple b = boost_jacobi(kp, v);
  const double den = b.cn * b.cn + k * k * a.sn * a.sn * b.sn * b.sn;
  return {cplx(a.sn * b.dn, a.cn * a.dn * b.sn * b.cn) / den,
          cplx(a.cn * b.cn, -a.sn * a.dn * b.sn * b.dn) / den,
          cplx(a.dn * b.cn * b.dn, -k * k * a.sn * a.cn * b.sn) / den};
}

cplx quadrature_K(cplx m) {
  auto part = [m](bool imag) {
    return boost::math::quadrature::gauss<double, 40>::integrate(
        [m, imag](double t) {
          const double s = std::sin(t);
          const cplx f = 1.0 / std::sqrt(1.0 - m * s * s);
          return imag ? f.imag() : f.real();
        },
        0.0, kPi / 2.0);
  };
  return {part(false), part(true)};
}

}  // namespace

TEST_CASE("real modulus matches multiprecision Jacobi functions") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uk(0.0, 0.99), ux(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double k = uk(rng), x = ux(rng);
    const RealTriple ref = boost_jacobi(k, x);
    const JacobiTriple j = jacobi(cplx(x), cplx(k * k));
    CHECK(std::abs(j.sn - ref.sn) < 1e-13);
    CHECK(std::abs(j.cn - ref.cn) < 1e-13);
    CHECK(std::abs(j.dn - ref.dn) < 1e-13);
  }
}

TEST_CASE("complete K matches Boost at real modulus") {
  for (const double k : {0.0, 0.01, 0.3, 0.7, 0.95}) {
    const double ref = static_cast<double>(boost::math::ellint_1(Big(k)));
    CHECK(std::abs(complete_K(k * k) - ref) < 1e-14 * ref);
  }
}

TEST_CASE("complex arguments at real modulus match the addition formulas") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uk(0.01, 0.95), ux(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double k = uk(rng), u = ux(rng), v = ux(rng);
    const JacobiTriple ref = addition_oracle(k, u, v);
    // Skip the neighbourhoods of poles where both sides lose digits.
    if (std::abs(ref.sn) > 1e3) continue;
    const JacobiTriple j = jacobi(cplx(u, v), cplx(k * k));
    const double scale = 1.0 + std::abs(ref.sn) * std::abs(ref.sn);
    CHECK(std::abs(j.sn - ref.sn) < 1e-11 * scale);
    CHECK(std::abs(j.cn - ref.cn) < 1e-11 * scale);
    CHECK(std::abs(j.dn - ref.dn) < 1e-11 * scale);
  }
}

TEST_CASE("complete K at complex modulus matches quadrature") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const cplx m = random_in_disk(rng, 0.9);
    CHECK(std::abs(complete_K(m) - quadrature_K(m)) < 1e-12);
  }
}

TEST_CASE("complex modulus: derivatives by finite differences") {
  std::mt19937_64 rng(4);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const cplx m = random_in_disk(rng, 0.9);
    const cplx x = random_in_disk(rng, 1.0);
    const EllipticModulus mod = EllipticModulus::from_m(m);
    const JacobiTriple j = jacobi(x, mod);
    const JacobiTriple jp = jacobi(x + h, mod), jm = jacobi(x - h, mod);
    const cplx dsn = (jp.sn - jm.sn) / (2.0 * h);
    const cplx dcn = (jp.cn - jm.cn) / (2.0 * h);
    const cplx ddn = (jp.dn - jm.dn) / (2.0 * h);
    CHECK(std::abs(dsn - j.cn * j.dn) < 1e-8);
    CHECK(std::abs(dcn + j.sn * j.dn) < 1e-8);
    CHECK(std::abs(ddn + m * j.sn * j.cn) < 1e-8);
  }
}

TEST_CASE("periods and half-period shifts") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const EllipticModulus mod =
        EllipticModulus::from_m(random_in_disk(rng, 0.9));
    const cplx x = random_in_disk(rng, 0.8);
    const JacobiTriple j = jacobi(x, mod);
    const JacobiTriple a = jacobi(x + 4.0 * mod.K, mod);
    const JacobiTriple b = jacobi(x + 2.0 * kI * mod.K_prime, mod);
    CHECK(std::abs(a.sn - j.sn) < 1e-9);
    CHECK(std::abs(b.sn - j.sn) < 1e-9);
    CHECK(std::abs(b.cn + j.cn) < 1e-9);
    for (const HalfPeriod h : {HalfPeriod::kK, HalfPeriod::kIKp, HalfPeriod::kKIKp}) {
      const JacobiTriple s = shifted_identities(x, mod, h);
      const JacobiTriple d = jacobi(x + half_period_value(h, mod), mod);
      CHECK(std::abs(s.sn - d.sn) < 1e-9 * std::max(1.0, std::abs(d.sn)));
      CHECK(std::abs(s.dn - d.dn) < 1e-9 * std::max(1.0, std::abs(d.dn)));
    }
  }
}

TEST_CASE("inverse of sn^2") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const EllipticModulus mod =
        EllipticModulus::from_m(random_in_disk(rng, 0.9));
    const cplx z = random_in_disk(rng, 3.0);
    const cplx sn = jacobi(inverse_sn2(z, mod), mod).sn;
    CHECK(std::abs(sn * sn - z) < 1e-10 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(complete_K(cplx(2.0, 0.0)), Error);
  try {
    EllipticModulus::from_m(1.5);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
  const EllipticModulus mod = EllipticModulus::from_m(0.3);
  CHECK_THROWS_AS(jacobi(kI * mod.K_prime, mod), Error);
}
