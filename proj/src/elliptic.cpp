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

#include "ellhill/elliptic.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ellhill {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// pi / (2 AGM(1, kp)), taking the branch with Re(b/a) >= 0 at every step.
cplx agm_quarter_period(cplx kp) {
  cplx a = 1.0;
  cplx b = kp;
  for (int it = 0; it < 64; ++it) {
    if (std::abs(a - b) <= 4e-16 * std::abs(a)) return kPi / (2.0 * a);
    const cplx an = 0.5 * (a + b);
    cplx bn = std::sqrt(a * b);
    if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
  }
  fail(ErrorCode::kNonConvergence, "AGM did not converge in 64 iterations");
}

bool on_cut(cplx m) { return m.imag() == 0.0 && m.real() >= 1.0; }

// Descending Landen transformation down to a negligible modulus, then
// ascending back. Only k' enters: k_{n+1} = m_n/(1+k'_n)^2 avoids the
// cancellation in (1-k')/(1+k') when m is small.
JacobiTriple landen(cplx u, cplx m, cplx kp) {
  std::vector<cplx> ks;
  cplx mn = m;
  cplx kpn = kp;
  while (std::abs(mn) > 1e-17 && ks.size() < 40) {
    const cplx k1 = mn / ((1.0 + kpn) * (1.0 + kpn));
    kpn = 2.0 * std::sqrt(kpn) / (1.0 + kpn);
    mn = k1 * k1;
    ks.push_back(k1);
  }
  cplx v = u;
  for (const cplx& k1 : ks) v /= (1.0 + k1);
  const cplx s = std::sin(v);
  const cplx c = std::cos(v);
  const cplx corr = 0.25 * mn * (v - s * c);
  cplx sn = s - corr * c;
  cplx cn = c + corr * s;
  cplx dn = 1.0 - 0.5 * mn * s * s;
  for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
    const cplx k1 = *it;
    const cplx den = 1.0 + k1 * sn * sn;
    const cplx sn0 = (1.0 + k1) * sn / den;
    const cplx cn0 = cn * dn / den;
    const cplx dn0 = (1.0 - k1 * sn * sn) / den;
    sn = sn0;
    cn = cn0;
    dn = dn0;
  }
  return {sn, cn, dn};
}

}  // namespace

cplx complete_K(cplx m) {
  if (on_cut(m)) fail(ErrorCode::kDomain, "complete_K: m on the cut [1, inf)");
  if (m == 0.0) return kPi / 2.0;
  return agm_quarter_period(std::sqrt(1.0 - m));
}

EllipticModulus EllipticModulus::from_m(cplx m) {
  if (on_cut(m)) fail(ErrorCode::kDomain, "modulus: m on the cut [1, inf)");
  EllipticModulus r;
  r.m = m;
  r.k = std::sqrt(m);
  r.k_prime = std::sqrt(1.0 - m);
  r.K = complete_K(m);
  // K(1-m) continued through principal k, so m <= 0 stays usable.
  r.K_prime = (m == 0.0) ? cplx(kInf, 0.0) : agm_quarter_period(r.k);
  return r;
}

EllipticModulus EllipticModulus::from_k(cplx k) { return from_m(k * k); }

bool EllipticModulus::has_imaginary_period() const {
  return std::isfinite(K_prime.real()) && std::isfinite(K_prime.imag());
}

std::array<double, 2> lattice_coordinates(cplx x, const EllipticModulus& mod) {
  const cplx w1 = 2.0 * mod.K;
  if (!mod.has_imaginary_period()) return {x.real() / w1.real(), 0.0};
  const cplx w2 = 2.0 * kI * mod.K_prime;
  const double det = w1.real() * w2.imag() - w2.real() * w1.imag();
  const double a = (x.real() * w2.imag() - w2.real() * x.imag()) / det;
  const double b = (w1.real() * x.imag() - x.real() * w1.imag()) / det;
  return {a, b};
}

JacobiTriple jacobi(cplx x, const EllipticModulus& mod) {
  const auto ab = lattice_coordinates(x, mod);
  const double na = std::round(ab[0]);
  const double nb = std::round(ab[1]);
  cplx xr = x - na * 2.0 * mod.K;
  if (nb != 0.0) xr -= nb * 2.0 * kI * mod.K_prime;
  if (mod.has_imaginary_period()) {
    const cplx pole = kI * mod.K_prime;
    if (std::abs(xr - pole) < 1e-12 || std::abs(xr + pole) < 1e-12) {
      fail(ErrorCode::kPole, "jacobi: argument at a pole (iK' mod periods)");
    }
  }
  JacobiTriple t = landen(xr, mod.m, mod.k_prime);
  const bool odd_a = std::fmod(std::abs(na), 2.0) == 1.0;
  const bool odd_b = std::fmod(std::abs(nb), 2.0) == 1.0;
  if (odd_a) t.sn = -t.sn;
  if (odd_a != odd_b) t.cn = -t.cn;
  if (odd_b) t.dn = -t.dn;
  return t;
}

JacobiTriple jacobi(cplx x, cplx m) {
  return jacobi(x, EllipticModulus::from_m(m));
}

cplx half_period_value(HalfPeriod h, const EllipticModulus& mod) {
  switch (h) {
    case HalfPeriod::kZero: return 0.0;
    case HalfPeriod::kK: return mod.K;
    case HalfPeriod::kIKp: return kI * mod.K_prime;
    case HalfPeriod::kKIKp: return mod.K + kI * mod.K_prime;
  }
  return 0.0;
}

JacobiTriple shifted_identities(const JacobiTriple& t,
                                const EllipticModulus& mod, HalfPeriod shift) {
  const cplx k = mod.k;
  const cplx kp = mod.k_prime;
  auto guard = [](cplx d, const char* what) {
    if (d == 0.0 || !std::isfinite(std::abs(d))) fail(ErrorCode::kPole, what);
  };
  switch (shift) {
    case HalfPeriod::kZero:
      return t;
    case HalfPeriod::kK:
      guard(t.dn, "shifted_identities: dn x = 0");
      return {t.cn / t.dn, -kp * t.sn / t.dn, kp / t.dn};
    case HalfPeriod::kIKp:
      guard(k * t.sn, "shifted_identities: k sn x = 0");
      return {1.0 / (k * t.sn), -kI * t.dn / (k * t.sn), -kI * t.cn / t.sn};
    case HalfPeriod::kKIKp:
      guard(k * t.cn, "shifted_identities: k cn x = 0");
      return {t.dn / (k * t.cn), -kI * kp / (k * t.cn), kI * kp * t.sn / t.cn};
  }
  return t;
}

JacobiTriple shifted_identities(cplx x, const EllipticModulus& mod,
                                HalfPeriod shift) {
  return shifted_identities(jacobi(x, mod), mod, shift);
}

JacobiTaylor taylor_at_halfperiod(HalfPeriod shift, int order,
                                  const EllipticModulus& mod) {
  if (order < 0 || order > 12) {
    fail(ErrorCode::kInvalidArgument, "taylor_at_halfperiod: order in [0, 12]");
  }
  const size_t n = static_cast<size_t>(order) + 1;
  // s' = c d, c' = -s d, d' = -m s c about the origin.
  std::vector<cplx> s(n, 0.0), c(n, 0.0), d(n, 0.0);
  c[0] = 1.0;
  d[0] = 1.0;
  for (size_t j = 0; j + 1 < n; ++j) {
    cplx cd = 0.0, sd = 0.0, sc = 0.0;
    for (size_t i = 0; i <= j; ++i) {
      cd += c[i] * d[j - i];
      sd += s[i] * d[j - i];
      sc += s[i] * c[j - i];
    }
    const double inv = 1.0 / static_cast<double>(j + 1);
    s[j + 1] = cd * inv;
    c[j + 1] = -sd * inv;
    d[j + 1] = -mod.m * sc * inv;
  }
  const cplx k = mod.k;
  const cplx kp = mod.k_prime;
  std::vector<cplx> rs, rc, rd;
  std::string at;
  switch (shift) {
    case HalfPeriod::kZero:
      rs = s; rc = c; rd = d; at = "0";
      break;
    case HalfPeriod::kK: {
      rs = pseries::div(c, d);
      rc = pseries::scale(pseries::div(s, d), -kp);
      std::vector<cplx> one(n, 0.0);
      one[0] = kp;
      rd = pseries::div(one, d);
      at = "K";
      break;
    }
    case HalfPeriod::kKIKp: {
      if (k == 0.0) fail(ErrorCode::kDomain, "taylor_at_halfperiod: k = 0");
      rs = pseries::scale(pseries::div(d, c), 1.0 / k);
      std::vector<cplx> one(n, 0.0);
      one[0] = -kI * kp / k;
      rc = pseries::div(one, c);
      rd = pseries::scale(pseries::div(s, c), kI * kp);
      at = "K+iK'";
      break;
    }
    case HalfPeriod::kIKp:
      fail(ErrorCode::kInvalidArgument,
           "taylor_at_halfperiod: iK' is a pole, no Taylor series");
  }
  JacobiTaylor out;
  out.sn = {"taylor:sn@" + at, SeriesVariable::kChi, 0, rs};
  out.cn = {"taylor:cn@" + at, SeriesVariable::kChi, 0, rc};
  out.dn = {"taylor:dn@" + at, SeriesVariable::kChi, 0, rd};
  return out;
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
  for (int it = 0; it < 100; ++it) {
    const cplx mu = (x + y + z) / 3.0;
    const double eps = std::max({std::abs(mu - x), std::abs(mu - y),
                                 std::abs(mu - z)}) /
                       std::abs(mu);
    if (eps < 1e-4) {
      const cplx X = (mu - x) / mu, Y = (mu - y) / mu, Z = (mu - z) / mu;
      const cplx e2 = X * Y - Z * Z;
      const cplx e3 = X * Y * Z;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 -
              3.0 * e2 * e3 / 44.0) /
             std::sqrt(mu);
    }
    const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const cplx lam = sx * sy + sx * sz + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  fail(ErrorCode::kNonConvergence, "carlson_rf did not converge");
}

namespace {

bool newton_sn2(cplx z, const EllipticModulus& mod, cplx& x) {
  const double tol = 1e-13 * std::max(1.0, std::abs(z));
  for (int it = 0; it < 60; ++it) {
    JacobiTriple t;
    try {
      t = jacobi(x, mod);
    } catch (const Error&) {
      return false;
    }
    const cplx f = t.sn * t.sn - z;
    if (!std::isfinite(std::abs(f))) return false;
    if (std::abs(f) <= tol) return true;
    const cplx fp = 2.0 * t.sn * t.cn * t.dn;
    if (fp == 0.0) return false;
    cplx step = f / fp;
    // Damp steps longer than a quarter period.
    const double cap = 0.5 * std::abs(mod.K);
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    x -= step;
  }
  JacobiTriple t = jacobi(x, mod);
  return std::abs(t.sn * t.sn - z) <= 1e-10 * std::max(1.0, std::abs(z));
}

std::array<double, 2> wrap_unit(std::array<double, 2> ab) {
  for (double& v : ab) {
    v -= std::floor(v);
    if (v > 1.0 - 1e-13) v = 0.0;
  }
  return ab;
}

}  // namespace

cplx inverse_sn2(cplx z, const EllipticModulus& mod) {
  cplx x = 0.0;
  bool ok = false;
  if (z != 0.0) {
    const cplx w = std::sqrt(z);
    try {
      x = w * carlson_rf(1.0 - z, 1.0 - mod.m * z, 1.0);
      ok = std::isfinite(std::abs(x)) && newton_sn2(z, mod, x);
    } catch (const Error&) {
      ok = false;
    }
    const int n = 8;
    for (int i = 0; i < n && !ok; ++i) {
      for (int j = 0; j < n && !ok; ++j) {
        x = (i + 0.37) / n * 2.0 * mod.K;
        if (mod.has_imaginary_period()) {
          x += (j + 0.41) / n * 2.0 * kI * mod.K_prime;
        }
        ok = newton_sn2(z, mod, x);
      }
    }
    if (!ok) fail(ErrorCode::kNonConvergence, "inverse_sn2: Newton failed");
  }
  if (!mod.has_imaginary_period()) return x;
  const auto p = wrap_unit(lattice_coordinates(x, mod));
  const auto q = wrap_unit(lattice_coordinates(-x, mod));
  const bool take_p = (std::abs(p[1] - q[1]) > 1e-12) ? (p[1] < q[1])
                                                      : (p[0] <= q[0]);
  const auto& r = take_p ? p : q;
  return r[0] * 2.0 * mod.K + r[1] * 2.0 * kI * mod.K_prime;
}

double half_lattice_distance(cplx x, const EllipticModulus& mod,
                             const std::array<bool, 4>& active) {
  const auto ab = lattice_coordinates(x, mod);
  const double a = 2.0 * ab[0];
  const double b = 2.0 * ab[1];
  const bool two_d = mod.has_imaginary_period();
  double best = kInf;
  for (int da = -1; da <= 2; ++da) {
    const double n = std::floor(a) + da;
    for (int db = -1; db <= 2; ++db) {
      const double m = two_d ? std::floor(b) + db : 0.0;
      if (!two_d && db != 0) continue;
      const int cls = static_cast<int>(std::fmod(std::abs(n), 2.0)) +
                      2 * static_cast<int>(std::fmod(std::abs(m), 2.0));
      if (!active[cls]) continue;
      cplx p = n * mod.K;
      if (m != 0.0) p += m * kI * mod.K_prime;
      best = std::min(best, std::abs(x - p));
    }
  }
  return best;
}

}  // namespace ellhill
