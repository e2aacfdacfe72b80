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

#include "ellhill/quad_differential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "ellhill/saddle.hpp"

namespace ellhill {
namespace {

constexpr double kPoleEvalTol = 1e-10;
constexpr double kCriticalTol = 1e-6;
constexpr double kPoleStopTol = 1e-4;
constexpr double kFarField = 1e6;
constexpr double kSnapAngle = 0.05;
constexpr double kRegimeFactor = 0.5;

// The coincident-root guard treats a zero sitting on a pole as cancelled.
constexpr double kCancelTol = 1e-8;

cplx saddle_center(const QuadDifferential& q, int index) {
  const auto& ctx = q.context;
  if (index == 5 && ctx.z5) return *ctx.z5;
  if (index == 6 && ctx.z6) return *ctx.z6;
  return saddle_predictions(q.params)[index - 1];
}

cplx saddle_value(const QuadDifferential& q, int index) {
  const auto& ctx = q.context;
  if (index == 5 && ctx.u5) return *ctx.u5;
  if (index == 6 && ctx.u6) return *ctx.u6;
  return eval_u_of_z(saddle_center(q, index), q.params);
}

std::array<cplx, 3> finite_poles(const QuadDifferential& q) {
  return {0.0, 1.0, 1.0 / q.params.m()};
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a > kPi) a -= 2.0 * kPi;
  if (a < -kPi) a += 2.0 * kPi;
  return a;
}

// Root of s closest to ref.
cplx continued_sqrt(cplx s, cplx ref) {
  const cplx r = std::sqrt(s);
  return std::abs(r - ref) <= std::abs(r + ref) ? r : -r;
}

using State = std::array<double, 2>;

}  // namespace

QuadDifferential QuadDifferential::make(const PotentialParams& p,
                                        cplx lambda) {
  return make(p, lambda, make_turning_context(p));
}

QuadDifferential QuadDifferential::make(const PotentialParams& p, cplx lambda,
                                        const TurningContext& ctx) {
  QuadDifferential q;
  q.params = p;
  q.lambda = lambda;
  q.context = ctx;
  q.turning = find_turning_points(p, lambda, ctx);
  q.poles = {SpherePoint{0.0, false}, SpherePoint{1.0, false},
             SpherePoint::from(1.0 / p.m()), SpherePoint::infinity()};
  return q;
}

cplx phi(const QuadDifferential& q, cplx z) {
  const cplx inv_m = 1.0 / q.params.m();
  for (const cplx zp : finite_poles(q)) {
    if (std::abs(z - zp) < kPoleEvalTol * std::max(1.0, std::abs(zp))) {
      fail(ErrorCode::kPole, "phi: z at a pole");
    }
  }
  cplx num = q.params.b()[0];
  for (const cplx zt : q.turning.roots) num *= z - zt;
  const cplx d = z * (z - 1.0) * (z - inv_m);
  return num / (4.0 * d * d);
}

cplx phi_reciprocal(const QuadDifferential& q, cplx w) {
  // phi(1/w) / w^4 with the powers of w cancelled by hand, finite at w = 0.
  const cplx m = q.params.m();
  cplx num = q.params.b()[0];
  for (const cplx zt : q.turning.roots) num *= 1.0 - zt * w;
  const cplx d = (1.0 - w) * (1.0 - w / m);
  if (std::abs(d) < kPoleEvalTol) fail(ErrorCode::kPole, "phi: w at a pole");
  return num / (4.0 * w * w * d * d);
}

const char* local_site_name(LocalSite s) {
  switch (s) {
    case LocalSite::kTurning:
      return "turning";
    case LocalSite::kPole:
      return "pole";
    case LocalSite::kSaddle5:
      return "saddle5";
    case LocalSite::kSaddle6:
      return "saddle6";
    case LocalSite::kCoulomb:
      return "coulomb";
  }
  return "unknown";
}

cplx LocalApprox::evaluate(cplx z) const {
  const auto& c = coefficients;
  if (form == "linear") return c[0] * (z - center);
  if (form == "inverse-square") {
    if (center_at_infinity) return c[0] / (z * z);
    return c[0] / ((z - center) * (z - center));
  }
  if (form == "harmonic") return c[0] + c[1] * (z - center) * (z - center);
  // coulomb: center holds 1/k^2.
  return c[0] / (z * (z - 1.0) * (z - center));
}

LocalApprox local_approx(const QuadDifferential& q, LocalSite site,
                         int index) {
  const PotentialParams& p = q.params;
  const auto& b = p.b();
  const cplx m = p.m();
  const auto& zt = q.turning.roots;
  LocalApprox out;
  out.site = site;
  switch (site) {
    case LocalSite::kTurning: {
      if (index < 0 || index > 3) {
        fail(ErrorCode::kInvalidArgument, "local_approx: turning index");
      }
      const cplx z = zt[index];
      cplx num = b[0];
      for (int s = 0; s < 4; ++s) {
        if (s != index) num *= z - zt[s];
      }
      const cplx d = z * (z - 1.0) * (z - 1.0 / m);
      out.form = "linear";
      out.center = z;
      out.coefficients = {num / (4.0 * d * d)};
      return out;
    }
    case LocalSite::kPole: {
      if (index < 0 || index > 3) {
        fail(ErrorCode::kInvalidArgument, "local_approx: pole index");
      }
      out.form = "inverse-square";
      if (index == 3) {
        out.center_at_infinity = true;
        out.coefficients = {b[0] / 4.0};
        return out;
      }
      const auto poles = finite_poles(q);
      const cplx zp = poles[index];
      cplx num = b[0];
      for (const cplx r : zt) num *= zp - r;
      cplx rest = 1.0;
      for (int s = 0; s < 3; ++s) {
        if (s != index) rest *= zp - poles[s];
      }
      out.center = zp;
      out.coefficients = {num / (4.0 * rest * rest)};
      return out;
    }
    case LocalSite::kSaddle5:
    case LocalSite::kSaddle6: {
      const bool six = site == LocalSite::kSaddle6;
      const cplx delta = q.lambda - saddle_value(q, six ? 6 : 5);
      if (std::abs(delta) >
          kRegimeFactor * p.coupling_scale() * std::abs(p.k())) {
        fail(ErrorCode::kRegimeViolation,
             "local_approx: lambda not close to the saddle value");
      }
      const cplx d01 = b[0] - b[1], d23 = b[2] - b[3];
      const cplx q01 = std::sqrt(d01), q23 = std::sqrt(d23);
      const cplx k5 = std::pow(p.k(), 5);
      const cplx curvature =
          std::pow(q01, 5) * k5 / (4.0 * q23 * q23 * q23);
      out.form = "harmonic";
      out.center = saddle_center(q, six ? 6 : 5);
      out.coefficients = {d01 * m * delta / (4.0 * d23),
                          six ? curvature : -curvature};
      return out;
    }
    case LocalSite::kCoulomb: {
      const cplx anchor = q.context.u_anchor
                              ? *q.context.u_anchor
                              : eval_u_of_z(saddle_predictions(p)[0], p);
      const cplx dt = q.lambda - anchor;
      if (p.coupling_scale() > kRegimeFactor * std::abs(dt)) {
        fail(ErrorCode::kRegimeViolation,
             "local_approx: lambda not large against the couplings");
      }
      out.form = "coulomb";
      out.center = 1.0 / m;
      out.coefficients = {-dt / (4.0 * m)};
      return out;
    }
  }
  fail(ErrorCode::kInvalidArgument, "local_approx: unknown site");
}

cplx inferred_dispersion(LocalSite site, cplx mu, const PotentialParams& p,
                         int sign) {
  const auto& b = p.b();
  const cplx r = std::sqrt(std::sqrt(b[0] - b[1])) *
                 std::sqrt(std::sqrt(b[2] - b[3])) * std::sqrt(p.k());
  const double s = sign >= 0 ? 1.0 : -1.0;
  switch (site) {
    case LocalSite::kSaddle5:
      return -s * 4.0 * kI * (mu + 0.5) * r;
    case LocalSite::kSaddle6:
      return s * 4.0 * (mu + 0.5) * r;
    case LocalSite::kCoulomb:
      return mu * mu;
    default:
      break;
  }
  fail(ErrorCode::kInvalidArgument,
       "inferred_dispersion: site must be saddle5, saddle6 or coulomb");
}

const char* foliation_terminal_name(FoliationTerminal t) {
  switch (t) {
    case FoliationTerminal::kCriticalPoint:
      return "critical-point";
    case FoliationTerminal::kPole:
      return "pole";
    case FoliationTerminal::kMaxLength:
      return "max-length";
    case FoliationTerminal::kDomainExit:
      return "domain-exit";
  }
  return "unknown";
}

std::array<LaunchPoint, 3> launch_points(const QuadDifferential& q, int t,
                                         double theta, double radius) {
  if (t < 0 || t > 3) fail(ErrorCode::kInvalidArgument, "launch_points: t");
  const LocalApprox lin = local_approx(q, LocalSite::kTurning, t);
  const cplx zt = q.turning.roots[t];
  // w - w_t = (2/3) sqrt(a) (z - z_t)^{3/2} has argument theta along
  // three rays.
  const cplx sa = std::sqrt(lin.coefficients[0]);
  std::array<LaunchPoint, 3> out;
  for (int j = 0; j < 3; ++j) {
    const double ang =
        (2.0 / 3.0) * (theta - std::arg(sa) + 2.0 * kPi * j);
    const cplx z = zt + std::polar(radius, ang);
    const cplx v = std::sqrt(phi(q, z));
    const cplx dw = (2.0 / 3.0) * (z - zt) * v;
    const int sign =
        std::abs(wrap_angle(std::arg(dw) - theta)) < kPi / 2 ? +1 : -1;
    out[j] = {z, sign, std::abs(dw)};
  }
  return out;
}

FoliationLine trace_foliation(const QuadDifferential& q, cplx z0, double theta,
                              double max_len, const FoliationOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  if (!(max_len > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "trace_foliation: max_len <= 0");
  }
  const auto poles = finite_poles(q);
  // Zeros that coincide with a pole cancel and are not endpoints.
  std::vector<int> zeros;
  for (int t = 0; t < 4; ++t) {
    bool cancelled = false;
    for (const cplx zp : poles) {
      cancelled |= std::abs(q.turning.roots[t] - zp) <
                   kCancelTol * std::max(1.0, std::abs(zp));
    }
    if (!cancelled) zeros.push_back(t);
  }
  // A zero is snapped onto only where its linear local form holds.
  std::array<double, 4> snap_radius{};
  for (const int t : zeros) {
    double sep = std::numeric_limits<double>::infinity();
    for (int u = 0; u < 4; ++u) {
      if (u != t) sep = std::min(sep, std::abs(q.turning.roots[t] - q.turning.roots[u]));
    }
    for (const cplx zp : poles) sep = std::min(sep, std::abs(q.turning.roots[t] - zp));
    snap_radius[t] = 0.05 * sep;
  }
  double scale = 1.0;
  for (const cplx zt : q.turning.roots) scale = std::max(scale, std::abs(zt));
  scale = std::max(scale, std::abs(poles[2]));

  FoliationLine line;
  line.theta = theta;
  const cplx dir = std::polar(1.0, theta);

  bool reciprocal = std::abs(z0) > kFarField;
  cplx y = reciprocal ? 1.0 / z0 : z0;
  auto phi_chart = [&](cplx c) {
    return reciprocal ? phi_reciprocal(q, c) : phi(q, c);
  };
  cplx v = std::sqrt(phi_chart(y)) * static_cast<double>(opts.branch_sign);
  if (v == 0.0) {
    fail(ErrorCode::kBranchAmbiguity, "trace_foliation: z0 is a zero of phi");
  }
  double s = opts.initial_length;
  line.points.push_back(z0);
  line.arc.push_back(s);

  cplx vref = v;
  auto rhs = [&](const State& x, State& dxdt, double /*t*/) {
    const cplx c(x[0], x[1]);
    const cplx ph = phi_chart(c);
    if (ph == 0.0) {
      fail(ErrorCode::kBranchAmbiguity, "trace_foliation: step hit a zero");
    }
    const cplx vv = continued_sqrt(ph, vref);
    const cplx f = dir / vv;
    dxdt[0] = f.real();
    dxdt[1] = f.imag();
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_cash_karp54<State>>(
      opts.tolerance, opts.tolerance);

  auto finish = [&](FoliationTerminal term, int index) {
    line.terminal = term;
    line.terminal_index = index;
    line.wkb_length = s;
    return line;
  };

  double h = 1e-3 * max_len;
  for (int step = 0; step < opts.max_steps; ++step) {
    const cplx z = reciprocal ? 1.0 / y : y;
    // Termination tests at the current point.
    for (int p = 0; p < 3; ++p) {
      if (std::abs(z - poles[p]) <
          kPoleStopTol * std::max(1.0, std::abs(poles[p]))) {
        return finish(FoliationTerminal::kPole, p);
      }
    }
    if (reciprocal && std::abs(y) < kPoleStopTol / scale) {
      return finish(FoliationTerminal::kPole, 3);
    }
    if (opts.domain) {
      const Window& w = *opts.domain;
      if (z.real() < w.lower_left.real() || z.real() > w.upper_right.real() ||
          z.imag() < w.lower_left.imag() || z.imag() > w.upper_right.imag()) {
        return finish(FoliationTerminal::kDomainExit, -1);
      }
    }
    // Snap onto a zero when the straight w-line from here runs into it.
    double nearest = std::numeric_limits<double>::infinity();
    for (const int t : zeros) {
      const cplx zt = q.turning.roots[t];
      const double dist = std::abs(z - zt);
      nearest = std::min(nearest, dist);
      if (reciprocal || dist > snap_radius[t]) continue;
      const cplx dw = -(2.0 / 3.0) * (z - zt) * v;
      if (std::abs(wrap_angle(std::arg(dw) - theta)) < kSnapAngle &&
          s + std::abs(dw) <= max_len) {
        s += std::abs(dw);
        line.points.push_back(zt);
        line.arc.push_back(s);
        return finish(FoliationTerminal::kCriticalPoint, t);
      }
      if (dist < kCriticalTol * std::max(1.0, std::abs(zt))) {
        return finish(FoliationTerminal::kCriticalPoint, t);
      }
    }
    if (s >= max_len) return finish(FoliationTerminal::kMaxLength, -1);

    // |dw| per step is bounded by a fraction of the distance to the
    // nearest feature, measured in w.
    double feature = nearest;
    for (const cplx zp : poles) feature = std::min(feature, std::abs(z - zp));
    double hmax = reciprocal ? 0.25 * std::abs(v) * std::abs(y)
                             : 0.25 * std::abs(v) * feature;
    hmax = std::min(hmax, max_len - s);
    h = std::min(h, hmax);
    if (!(h > 0.0)) return finish(FoliationTerminal::kMaxLength, -1);

    State x{y.real(), y.imag()};
    double t = s;
    int tries = 0;
    while (stepper.try_step(rhs, x, t, h) != odeint::success) {
      if (++tries > 60 || h < 1e-300) {
        fail(ErrorCode::kNonConvergence, "trace_foliation: step underflow");
      }
    }
    s = t;
    y = cplx(x[0], x[1]);
    v = continued_sqrt(phi_chart(y), vref);
    vref = v;
    // Chart changes keep v continuous: v_w = -v z^2.
    if (!reciprocal && std::abs(y) > kFarField) {
      v = -v * y * y;
      y = 1.0 / y;
      reciprocal = true;
      vref = v;
    } else if (reciprocal && std::abs(y) > 10.0 / kFarField) {
      v = -v * y * y;
      y = 1.0 / y;
      reciprocal = false;
      vref = v;
    }
    line.points.push_back(reciprocal ? 1.0 / y : y);
    line.arc.push_back(s);
  }
  return finish(FoliationTerminal::kMaxLength, -1);
}

cplx wkb_period(const QuadDifferential& q, int a, int b) {
  if (a < 0 || a > 3 || b < 0 || b > 3 || a == b) {
    fail(ErrorCode::kInvalidArgument, "wkb_period: two distinct turning points");
  }
  const cplx za = q.turning.roots[a];
  const cplx d = q.turning.roots[b] - za;
  // z = za + d (1 - cos t) / 2 flattens the square-root endpoints; the
  // trapezoid rule then converges fast on [0, pi].
  constexpr int kNodes = 400;
  cplx sum = 0.0;
  cplx ref = 0.0;
  for (int j = 1; j < kNodes; ++j) {
    const double t = kPi * j / kNodes;
    const cplx z = za + d * (0.5 * (1.0 - std::cos(t)));
    const cplx v = j == 1 ? std::sqrt(phi(q, z)) : continued_sqrt(phi(q, z), ref);
    ref = v;
    sum += v * d * (0.5 * std::sin(t));
  }
  return sum * (kPi / kNodes);
}

}  // namespace ellhill
