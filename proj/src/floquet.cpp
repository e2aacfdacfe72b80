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

#include "ellhill/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "ellhill/saddle.hpp"

namespace ellhill {
namespace {

constexpr double kSingularTol = 1e-10;
constexpr double kClearanceFactor = 0.1;
constexpr double kBumpFactor = 0.2;
constexpr double kSubsegmentFactor = 0.25;
constexpr double kUnimodularTol = 1e-6;
constexpr double kRegimeFactor = 0.5;
constexpr double kShiftTol = 1e-6;
constexpr double kSegmentDefect = 1e-9;
constexpr int kMaxSplitDepth = 12;

double lattice_scale(const EllipticModulus& mod) {
  const double a = std::abs(mod.K);
  if (!mod.has_imaginary_period()) return a;
  return std::min(a, std::abs(mod.K_prime));
}

// 1 for the cases whose multiplier carries the half-integer offset.
double offset_flag(FloquetCase c) { return c == FloquetCase::kC ? 0.0 : 1.0; }

// Members of the classes (0, K, iK', K+iK' mod 2K, 2iK') flagged in
// active that lie near the segment [a, b].
std::vector<cplx> lattice_points_near(cplx a, cplx b,
                                      const EllipticModulus& mod,
                                      const std::array<bool, 4>& active) {
  const bool two_d = mod.has_imaginary_period();
  const auto la = lattice_coordinates(a, mod);
  const auto lb = lattice_coordinates(b, mod);
  const int n0 = static_cast<int>(std::floor(2.0 * std::min(la[0], lb[0]))) - 2;
  const int n1 = static_cast<int>(std::ceil(2.0 * std::max(la[0], lb[0]))) + 2;
  int m0 = 0, m1 = 0;
  if (two_d) {
    m0 = static_cast<int>(std::floor(2.0 * std::min(la[1], lb[1]))) - 2;
    m1 = static_cast<int>(std::ceil(2.0 * std::max(la[1], lb[1]))) + 2;
  }
  std::vector<cplx> out;
  for (int n = n0; n <= n1; ++n) {
    for (int m = m0; m <= m1; ++m) {
      const int cls = (std::abs(n) % 2) + 2 * (std::abs(m) % 2);
      if (!active[cls]) continue;
      cplx p = static_cast<double>(n) * mod.K;
      if (m != 0) p += static_cast<double>(m) * kI * mod.K_prime;
      out.push_back(p);
    }
  }
  return out;
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? std::real(std::conj(d) * (p - a)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Straight path a -> a + T with a rectangular detour (half-height and
// half-width bump) around every singular point closer than clearance.
// A point off the line keeps its side; a point on the line is passed on
// the right.
std::vector<cplx> detoured_path(cplx a, cplx T, const EllipticModulus& mod,
                                const std::array<bool, 4>& active,
                                const char* who) {
  const double scale = lattice_scale(mod);
  const double clearance = kClearanceFactor * scale;
  const double bump = kBumpFactor * scale;
  const cplx b = a + T;
  const double len = std::abs(T);
  const cplx dir = T / len;
  const cplx left = kI * dir;
  const std::vector<cplx> pts = lattice_points_near(a, b, mod, active);

  struct Detour {
    double t;
    double side;
  };
  std::vector<Detour> detours;
  for (const cplx p : pts) {
    if (segment_distance(p, a, b) >= clearance) continue;
    const double t = std::real(std::conj(dir) * (p - a));
    const double d = std::real(std::conj(left) * (p - a));
    if (t - bump < 0.0 || t + bump > len) {
      fail(ErrorCode::kPathPoleConflict,
           std::string(who) + ": base point too close to a singularity");
    }
    detours.push_back({t, d > 1e-12 * scale ? -1.0 : 1.0});
    if (std::abs(d) <= 1e-12 * scale) detours.back().side = -1.0;
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& x, const Detour& y) { return x.t < y.t; });
  std::vector<cplx> path{a};
  double last = -std::numeric_limits<double>::infinity();
  for (const Detour& d : detours) {
    if (d.t - bump <= last) {
      fail(ErrorCode::kPathPoleConflict,
           std::string(who) + ": singularities too close for a detour");
    }
    const cplx off = d.side * bump * left;
    path.push_back(a + (d.t - bump) * dir);
    path.push_back(a + (d.t - bump) * dir + off);
    path.push_back(a + (d.t + bump) * dir + off);
    path.push_back(a + (d.t + bump) * dir);
    last = d.t + bump;
  }
  path.push_back(b);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    for (const cplx p : pts) {
      if (segment_distance(p, path[i], path[i + 1]) < 0.999 * clearance) {
        fail(ErrorCode::kPathPoleConflict,
             std::string(who) + ": no compliant path");
      }
    }
  }
  return path;
}

// Sum of the continuous change of arg/log of F along the polyline, with
// bisection until consecutive ratios stay near 1.
cplx continuous_log_change(const std::vector<cplx>& path,
                           const std::function<cplx(cplx)>& F) {
  cplx total = 0.0;
  std::function<void(cplx, cplx, cplx, cplx, int)> walk =
      [&](cplx x0, cplx f0, cplx x1, cplx f1, int depth) {
        const cplx r = f1 / f0;
        if ((std::abs(r - 1.0) < 0.25 && depth > 2) || depth > 40) {
          total += std::log(r);
          return;
        }
        const cplx xm = 0.5 * (x0 + x1);
        const cplx fm = F(xm);
        walk(x0, f0, xm, fm, depth + 1);
        walk(xm, fm, x1, f1, depth + 1);
      };
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    walk(path[i], F(path[i]), path[i + 1], F(path[i + 1]), 0);
  }
  return total;
}

bool near_upper_row(cplx x, const EllipticModulus& mod) {
  if (!mod.has_imaginary_period()) return false;
  const auto ab = lattice_coordinates(x, mod);
  return std::abs(ab[1] - std::round(ab[1])) > 0.25;
}

// Argument of the logarithm in f, with the triple at x - iK' used near the
// iK' row where sn, cn, dn are large.
cplx log_argument(FloquetCase c, cplx x, const EllipticModulus& mod) {
  const cplx k = mod.k, kp = mod.k_prime;
  if (near_upper_row(x, mod)) {
    const JacobiTriple t = jacobi(x - kI * mod.K_prime, mod);
    if (c == FloquetCase::kA) return kI * (t.dn - k * t.cn) / kp;
    return (k * t.cn + kI * kp) / t.dn;
  }
  const JacobiTriple t = jacobi(x, mod);
  if (c == FloquetCase::kA) return (t.dn - t.cn) / (kp * t.sn);
  return (t.dn + kp * t.sn) / t.cn;
}

std::array<bool, 4> log_singular_classes(FloquetCase c) {
  if (c == FloquetCase::kA) return {true, false, false, false};
  return {false, true, false, false};
}

int winding_number(const std::vector<cplx>& path, const EllipticModulus& mod,
                   cplx center) {
  const cplx turns = continuous_log_change(path, [&](cplx x) {
    const cplx s = jacobi(x, mod).sn;
    return s * s - center;
  });
  return static_cast<int>(std::lround(turns.imag() / (2.0 * kPi)));
}

using OdeState = std::array<cplx, 4>;

// Transfer matrix of psi'' = (u - lambda) psi along [a, b].
std::array<cplx, 4> segment_transfer(const PotentialParams& p, cplx lambda,
                                     cplx a, cplx b,
                                     const MonodromyOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  const cplx d = b - a;
  auto rhs = [&](const OdeState& y, OdeState& dy, double s) {
    const cplx w = eval_u(a + s * d, p) - lambda;
    dy[0] = d * y[1];
    dy[1] = d * w * y[0];
    dy[2] = d * y[3];
    dy[3] = d * w * y[2];
  };
  OdeState y{1.0, 0.0, 0.0, 1.0};
  using Stepper = odeint::runge_kutta_dopri5<OdeState, double, OdeState, double>;
  odeint::integrate_adaptive(
      odeint::make_controlled<Stepper>(opts.atol, opts.rtol), rhs, y, 0.0, 1.0,
      1e-2);
  return {y[0], y[2], y[1], y[3]};
}

std::array<cplx, 4> matmul(const std::array<cplx, 4>& x,
                           const std::array<cplx, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// Monodromy paths also avoid the logarithmic points of f, so that the
// shift of f along them is defined.
std::array<bool, 4> path_classes(FloquetCase c, const PotentialParams& p) {
  std::array<bool, 4> classes = p.active_singularities();
  if (c != FloquetCase::kC) {
    const auto log_classes = log_singular_classes(c);
    for (int i = 0; i < 4; ++i) classes[i] = classes[i] || log_classes[i];
  }
  return classes;
}

cplx path_shift(FloquetCase c, const std::vector<cplx>& path,
                const EllipticModulus& mod) {
  if (c == FloquetCase::kC) return path.back() - path.front();
  const cplx dlog = continuous_log_change(
      path, [&](cplx x) { return log_argument(c, x, mod); });
  return c == FloquetCase::kA ? dlog : kI / mod.k_prime * dlog;
}

cplx relation_offset(FloquetCase c, const EllipticModulus& mod) {
  return kPi * offset_flag(c) / canonical_period(c, mod);
}

cplx series_seed(FloquetCase c, cplx lambda, const PotentialParams& p,
                 const SpectralContext& ctx, bool* ok) {
  *ok = true;
  if (c == FloquetCase::kC) return std::sqrt(lambda - ctx.c0.value_or(0.0));
  if (!ctx.has_saddles) {
    *ok = false;
    return 0.0;
  }
  const cplx inc = lambda - (c == FloquetCase::kA ? ctx.u5 : ctx.u6);
  return invert_eigenvalue_series(c, inc, p, ctx);
}

}  // namespace

const char* floquet_case_name(FloquetCase c) {
  switch (c) {
    case FloquetCase::kA:
      return "A";
    case FloquetCase::kB:
      return "B";
    case FloquetCase::kC:
      return "C";
  }
  return "?";
}

const char* period_tag_name(PeriodTag t) {
  switch (t) {
    case PeriodTag::k2K:
      return "2K";
    case PeriodTag::k2iKp:
      return "2iK'";
    case PeriodTag::k2K2iKp:
      return "2K+2iK'";
  }
  return "?";
}

PeriodTag period_of(FloquetCase c) {
  switch (c) {
    case FloquetCase::kA:
      return PeriodTag::k2iKp;
    case FloquetCase::kB:
      return PeriodTag::k2K2iKp;
    case FloquetCase::kC:
      break;
  }
  return PeriodTag::k2K;
}

FloquetCase case_of(PeriodTag t) {
  switch (t) {
    case PeriodTag::k2iKp:
      return FloquetCase::kA;
    case PeriodTag::k2K2iKp:
      return FloquetCase::kB;
    case PeriodTag::k2K:
      break;
  }
  return FloquetCase::kC;
}

cplx period_value(PeriodTag t, const EllipticModulus& mod) {
  if (t != PeriodTag::k2K && !mod.has_imaginary_period()) {
    fail(ErrorCode::kDomain, "period_value: no imaginary period at m = 0");
  }
  switch (t) {
    case PeriodTag::k2K:
      return 2.0 * mod.K;
    case PeriodTag::k2iKp:
      return 2.0 * kI * mod.K_prime;
    case PeriodTag::k2K2iKp:
      return 2.0 * mod.K + 2.0 * kI * mod.K_prime;
  }
  return 0.0;
}

cplx canonical_period(FloquetCase c, const EllipticModulus& mod) {
  switch (c) {
    case FloquetCase::kA:
      return kI * kPi;
    case FloquetCase::kB:
      return kPi / mod.k_prime;
    case FloquetCase::kC:
      break;
  }
  return 2.0 * mod.K;
}

cplx canonical_coordinate(FloquetCase c, cplx x, const EllipticModulus& mod) {
  if (c == FloquetCase::kC) return x;
  if (mod.k_prime == 0.0) {
    fail(ErrorCode::kDomain, "canonical_coordinate: k' = 0");
  }
  if (half_lattice_distance(x, mod, log_singular_classes(c)) < kSingularTol) {
    fail(ErrorCode::kSingularity, "canonical_coordinate: logarithmic branch point");
  }
  const cplx g = log_argument(c, x, mod);
  if (g == 0.0 || !std::isfinite(std::abs(g))) {
    fail(ErrorCode::kSingularity, "canonical_coordinate: logarithmic branch point");
  }
  if (c == FloquetCase::kA) return std::log(g);
  return kI / mod.k_prime * std::log(g);
}

cplx canonical_shift(FloquetCase c, cplx x0, const EllipticModulus& mod) {
  const cplx T = period_value(period_of(c), mod);
  if (c == FloquetCase::kC) return T;
  const auto path =
      detoured_path(x0, T, mod, log_singular_classes(c), "canonical_shift");
  return path_shift(c, path, mod);
}

SpectralContext make_spectral_context(const PotentialParams& p) {
  SpectralContext ctx;
  if (p.coupling_scale() == 0.0) {
    ctx.c0 = 0.0;
    return ctx;
  }
  const auto& b = p.b();
  if (!p.generic() || b[0] == 0.0 || b[2] == 0.0 || p.k() == 0.0) return ctx;
  try {
    const SaddleSearch s = find_saddles_tolerant(p);
    if (s.degenerate || !s.labeled_by_series || s.saddles.size() < 6) {
      return ctx;
    }
    const SaddlePoint& s5 = s.saddles[4];
    const SaddlePoint& s6 = s.saddles[5];
    ctx.x5 = s5.x_star;
    ctx.x6 = s6.x_star;
    ctx.z5 = s5.z_star;
    ctx.z6 = s6.z_star;
    ctx.u5 = s5.u_star;
    ctx.u6 = s6.u_star;
    ctx.lambda2 = local_coefficients(s5, p, 2).coefficients[2];
    ctx.lambda2_hat = local_coefficients(s6, p, 2).coefficients[2];
    ctx.has_saddles = true;
  } catch (const Error&) {
    ctx.has_saddles = false;
  }
  return ctx;
}

cplx wkb_integrand(FloquetCase c, cplx arg, cplx increment,
                   const PotentialParams& p, int order,
                   const SpectralContext& ctx, int sign) {
  if (order < 0 || order > 2) {
    fail(ErrorCode::kInvalidArgument, "wkb_integrand: order in [0, 2]");
  }
  const double s = sign >= 0 ? 1.0 : -1.0;
  const auto& mod = p.modulus();
  const cplx m = mod.m;
  if (c == FloquetCase::kC) {
    const cplx r = std::sqrt(increment);
    cplx v = s * kI * r;
    if (order >= 1) v += s * eval_u(arg, p) / (2.0 * kI * r);
    if (order >= 2) v += eval_du(arg, p) / (4.0 * increment);
    return v;
  }
  if (!ctx.has_saddles) {
    fail(ErrorCode::kDegenerate, "wkb_integrand: no class-3 saddle data");
  }
  const JacobiTriple t = jacobi(arg, mod);
  if (c == FloquetCase::kA) {
    if (std::abs(t.sn) < kSingularTol) {
      fail(ErrorCode::kSingularity, "wkb_integrand: sn chi = 0");
    }
    const cplx r = std::sqrt(ctx.lambda2);
    cplx v = s * r * t.sn;
    if (order >= 1) v -= t.cn * t.dn / (2.0 * t.sn);
    if (order >= 2) {
      const cplx s3 = t.sn * t.sn * t.sn;
      v += s / r * (-3.0 / (8.0 * s3) + (1.0 + m - 4.0 * increment) / (8.0 * t.sn));
    }
    return v;
  }
  if (std::abs(t.cn) < kSingularTol) {
    fail(ErrorCode::kSingularity, "wkb_integrand: cn chihat = 0");
  }
  const cplx r = std::sqrt(ctx.lambda2_hat);
  const cplx kp2 = mod.k_prime * mod.k_prime;
  cplx v = s * r * t.cn;
  if (order >= 1) v += t.sn * t.dn / (2.0 * t.cn);
  if (order >= 2) {
    const cplx c3 = t.cn * t.cn * t.cn;
    v += s / r *
         (-3.0 * kp2 / (8.0 * c3) + (1.0 - 2.0 * m - 4.0 * increment) / (8.0 * t.cn));
  }
  return v;
}

cplx series_case_a(cplx mu, cplx m, cplx sqrt_lambda2, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const cplx nu = kI * mu + 0.5;
  return -s * 2.0 * sqrt_lambda2 * nu - (1.0 + m) / 8.0 * (4.0 * nu * nu + 1.0);
}

cplx series_case_b(cplx mu, cplx m, cplx k_prime, cplx sqrt_lambda2_hat,
                   int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const cplx nu = mu / k_prime + 0.5;
  return s * 2.0 * sqrt_lambda2_hat * k_prime * nu -
         (1.0 - 2.0 * m) / 8.0 * (4.0 * nu * nu + 1.0);
}

cplx eigenvalue_series(FloquetCase c, cplx mu, const PotentialParams& p,
                       int order, const SpectralContext& ctx,
                       RegimePolicy policy, int sign) {
  if (order < 1 || order > 2) {
    fail(ErrorCode::kInvalidArgument, "eigenvalue_series: order in [1, 2]");
  }
  const bool enforce = policy == RegimePolicy::kEnforce;
  const auto& mod = p.modulus();
  const double s = sign >= 0 ? 1.0 : -1.0;
  if (c == FloquetCase::kC) {
    if (enforce && std::norm(mu) < p.coupling_scale() / kRegimeFactor) {
      fail(ErrorCode::kRegimeViolation, "eigenvalue_series: |mu|^2 not >> |b|");
    }
    if (order == 1) return mu * mu;
    if (!ctx.c0) {
      fail(ErrorCode::kInvalidArgument, "eigenvalue_series: c0 not calibrated");
    }
    return mu * mu + *ctx.c0;
  }
  if (!ctx.has_saddles) {
    fail(ErrorCode::kDegenerate, "eigenvalue_series: no class-3 saddle data");
  }
  const bool a = c == FloquetCase::kA;
  const cplx r = std::sqrt(a ? ctx.lambda2 : ctx.lambda2_hat);
  const cplx nu = a ? kI * mu + 0.5 : mu / mod.k_prime + 0.5;
  if (enforce && std::abs(nu) > kRegimeFactor * std::abs(r)) {
    fail(ErrorCode::kRegimeViolation,
         "eigenvalue_series: index not small against the large coupling");
  }
  if (order == 1) {
    return a ? -s * 2.0 * r * nu : s * 2.0 * r * mod.k_prime * nu;
  }
  return a ? series_case_a(mu, mod.m, r, sign)
           : series_case_b(mu, mod.m, mod.k_prime, r, sign);
}

cplx invert_eigenvalue_series(FloquetCase c, cplx increment,
                              const PotentialParams& p,
                              const SpectralContext& ctx, int sign) {
  const auto& mod = p.modulus();
  if (c == FloquetCase::kC) return std::sqrt(increment - ctx.c0.value_or(0.0));
  if (!ctx.has_saddles) {
    fail(ErrorCode::kDegenerate, "invert_eigenvalue_series: no saddle data");
  }
  const double s = sign >= 0 ? 1.0 : -1.0;
  const bool a = c == FloquetCase::kA;
  const cplx r = std::sqrt(a ? ctx.lambda2 : ctx.lambda2_hat);
  // Quadratic qa nu^2 + qb nu + qc = 0 in nu = i mu + 1/2 (A) or
  // mu/k' + 1/2 (B).
  const cplx w = a ? 1.0 + mod.m : 1.0 - 2.0 * mod.m;
  const cplx lin = a ? -s * 2.0 * r : s * 2.0 * r * mod.k_prime;
  const cplx qa = w / 2.0, qb = -lin, qc = increment + w / 8.0;
  const cplx nu0 = increment / lin;
  cplx nu = nu0;
  if (std::abs(qa) > 0.0) {
    const cplx disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    const cplx n1 = (-qb + disc) / (2.0 * qa);
    const cplx n2 = (-qb - disc) / (2.0 * qa);
    nu = std::abs(n1 - nu0) <= std::abs(n2 - nu0) ? n1 : n2;
  }
  return a ? (nu - 0.5) / kI : mod.k_prime * (nu - 0.5);
}

DualityData duality_transform(const DualityData& a) {
  if (a.k_prime == 0.0) fail(ErrorCode::kDomain, "duality_transform: k' = 0");
  DualityData b;
  b.k = -kI * a.k / a.k_prime;
  b.k_prime = 1.0 / a.k_prime;
  b.sqrt_lambda2 = a.sqrt_lambda2 / a.k_prime;
  b.mu = (-kI * a.mu - 1.0) / a.k_prime;
  b.delta = a.delta / (a.k_prime * a.k_prime);
  return b;
}

cplx index_lattice(FloquetCase c, const EllipticModulus& mod) {
  return 2.0 * kPi / canonical_period(c, mod);
}

cplx mu_from_multiplier(FloquetCase c, cplx rho, const EllipticModulus& mod,
                        std::optional<cplx> seed) {
  const cplx ct = canonical_period(c, mod);
  const cplx mu0 =
      (std::log(rho) - kI * kPi * offset_flag(c) / 2.0) / (kI * ct);
  if (!seed) return mu0;
  const cplx lat = index_lattice(c, mod);
  const double n = std::round(std::real((*seed - mu0) / lat));
  return mu0 + n * lat;
}

bool index_relation_check(FloquetCase c, cplx mu_plus, cplx mu_minus,
                          const PotentialParams& p, double tol) {
  const auto& mod = p.modulus();
  const cplx v = mu_plus + mu_minus + relation_offset(c, mod);
  const cplx lat = index_lattice(c, mod);
  const double n = std::round(std::real(v / lat));
  return std::abs(v - n * lat) < tol;
}

cplx default_base_point(const PotentialParams& p, PeriodTag tag,
                        const SpectralContext& ctx) {
  const auto& mod = p.modulus();
  const cplx K = mod.K;
  if (tag == PeriodTag::k2K) {
    if (!mod.has_imaginary_period()) return 0.5 * kI * std::abs(K);
    return 0.5 * kI * mod.K_prime + 0.5 * K;
  }
  const FloquetCase c = case_of(tag);
  const cplx T = period_value(tag, mod);
  const auto classes = path_classes(c, p);
  cplx anchor;
  if (ctx.has_saddles) {
    anchor = c == FloquetCase::kA ? ctx.x5 - 0.5 * T : ctx.x6 - 0.5 * T;
  } else {
    anchor = 0.5 * K - 0.5 * T;
  }
  // Offsets along K first; rows shifted along iK' are a fallback for the
  // diagonal period, whose side of the K-class points sets the shift sign.
  const double offsets[] = {-0.3, 0.3, -0.15, 0.15, -0.45, 0.45, 0.0};
  const double rows[] = {0.0, 0.25, -0.25};
  const cplx iKp = mod.has_imaginary_period() ? kI * mod.K_prime : cplx(0.0);
  for (int n = 0; n < 3 * 7; ++n) {
    const cplx x0 = anchor + offsets[n % 7] * K + rows[n / 7] * iKp;
    std::vector<cplx> path;
    try {
      path = detoured_path(x0, T, mod, classes, "default_base_point");
    } catch (const Error&) {
      continue;
    }
    if (std::abs(path_shift(c, path, mod) - canonical_period(c, mod)) >
        kShiftTol) {
      continue;
    }
    if (c != FloquetCase::kA || !ctx.has_saddles) return x0;
    if (winding_number(path, mod, ctx.z5) != 0 &&
        winding_number(path, mod, ctx.z6) == 0) {
      return x0;
    }
  }
  fail(ErrorCode::kPathPoleConflict, "default_base_point: no compliant path");
}

std::vector<cplx> period_path(const PotentialParams& p, PeriodTag tag,
                              cplx base_point) {
  return detoured_path(base_point, period_value(tag, p.modulus()),
                       p.modulus(), path_classes(case_of(tag), p),
                       "period_path");
}

MonodromyResult monodromy(const PotentialParams& p, cplx lambda,
                          PeriodTag tag, cplx base_point,
                          const SpectralContext& ctx,
                          const MonodromyOptions& opts) {
  const auto& mod = p.modulus();
  MonodromyResult res;
  res.period_tag = tag;
  res.case_tag = case_of(tag);
  res.C_T = canonical_period(res.case_tag, mod);
  res.base_point = base_point;
  const cplx T = period_value(tag, mod);
  res.path = detoured_path(base_point, T, mod, path_classes(res.case_tag, p),
                           "monodromy");
  if (std::abs(path_shift(res.case_tag, res.path, mod) - res.C_T) >
      kShiftTol) {
    fail(ErrorCode::kPathPoleConflict,
         "monodromy: canonical shift along the path is not C_T");
  }
  if (opts.check_winding && res.case_tag == FloquetCase::kA &&
      ctx.has_saddles) {
    if (winding_number(res.path, mod, ctx.z5) == 0 ||
        winding_number(res.path, mod, ctx.z6) != 0) {
      fail(ErrorCode::kPathPoleConflict,
           "monodromy: contour must enclose z*5 and not z*6");
    }
  }

  const double max_len = kSubsegmentFactor * lattice_scale(mod);
  std::array<cplx, 4> M{1.0, 0.0, 0.0, 1.0};
  cplx det = 1.0;
  // Pieces whose Wronskian defect exceeds kSegmentDefect are halved: with
  // strong growth the defect scales like eps |S|^2.
  std::function<void(cplx, cplx, int)> advance = [&](cplx xa, cplx xb,
                                                     int depth) {
    const auto S = segment_transfer(p, lambda, xa, xb, opts);
    const cplx d = S[0] * S[3] - S[1] * S[2];
    if (std::abs(d - 1.0) > kSegmentDefect && depth < kMaxSplitDepth) {
      const cplx xm = 0.5 * (xa + xb);
      advance(xa, xm, depth + 1);
      advance(xm, xb, depth + 1);
      return;
    }
    det *= d;
    M = matmul(S, M);
  };
  for (size_t i = 0; i + 1 < res.path.size(); ++i) {
    const cplx a = res.path[i], b = res.path[i + 1];
    const int pieces =
        std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_len)));
    for (int j = 0; j < pieces; ++j) {
      advance(a + (b - a) * (static_cast<double>(j) / pieces),
              a + (b - a) * (static_cast<double>(j + 1) / pieces), 0);
    }
  }
  res.matrix = M;
  res.det = det;
  for (const cplx e : M) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      fail(ErrorCode::kNonConvergence, "monodromy: transfer matrix overflow");
    }
  }
  if (!std::isfinite(std::abs(det)) || std::abs(det - 1.0) > kUnimodularTol) {
    fail(ErrorCode::kNonUnimodular, "monodromy: |det M - 1| > 1e-6");
  }

  const cplx tr = M[0] + M[3];
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  cplx r1 = 0.5 * (tr + disc);
  if (std::abs(0.5 * (tr - disc)) > std::abs(r1)) r1 = 0.5 * (tr - disc);
  const cplx r2 = det / r1;

  bool ok = false;
  std::optional<cplx> seed = opts.mu_seed;
  if (!seed) {
    const cplx sd = series_seed(res.case_tag, lambda, p, ctx, &ok);
    if (ok) seed = sd;
  }
  if (seed) {
    const cplx partner = -*seed - relation_offset(res.case_tag, mod);
    const cplx a1 = mu_from_multiplier(res.case_tag, r1, mod, seed);
    const cplx a2 = mu_from_multiplier(res.case_tag, r2, mod, seed);
    const bool first = std::abs(a1 - *seed) <= std::abs(a2 - *seed);
    res.rho_plus = first ? r1 : r2;
    res.rho_minus = first ? r2 : r1;
    res.mu_plus = first ? a1 : a2;
    res.mu_minus = mu_from_multiplier(res.case_tag, res.rho_minus, mod, partner);
    res.seeded = true;
  } else {
    res.rho_plus = r1;
    res.rho_minus = r2;
    res.mu_plus = mu_from_multiplier(res.case_tag, r1, mod);
    res.mu_minus = mu_from_multiplier(res.case_tag, r2, mod);
  }
  return res;
}

cplx calibrate_c0(const PotentialParams& p, const SpectralContext& ctx,
                  double lambda_ref) {
  MonodromyOptions opts;
  opts.mu_seed = std::sqrt(cplx(lambda_ref));
  const MonodromyResult r =
      monodromy(p, lambda_ref, PeriodTag::k2K,
                default_base_point(p, PeriodTag::k2K, ctx), ctx, opts);
  return lambda_ref - r.mu_plus * r.mu_plus;
}

}  // namespace ellhill
