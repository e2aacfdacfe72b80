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

#include "ellhill/turning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ellhill/polynomial.hpp"
#include "ellhill/saddle.hpp"

namespace ellhill {
namespace {

constexpr double kRootMergeTol = 1e-10;
constexpr double kCollisionTol = 1e-8;
constexpr double kRegimeFactor = 0.5;
constexpr double kFarField = 1e6;

// Regime constants shared by the series and the detector.
struct RegimeConstants {
  cplx b0, b1, b2, b3, m, kp2;
  cplx d01, d23;
  cplx a;  // (b2-b3)^{1/4} / ((b0-b1)^{3/4} k^{3/2})
  cplx c;  // 1 / (2 (b0-b1) k^2)
  cplx e;  // 1 / (8 (b0-b1)^{5/4} (b2-b3)^{1/4} k^{5/2})
};

RegimeConstants regime_constants(const PotentialParams& p) {
  const auto& b = p.b();
  RegimeConstants r;
  r.b0 = b[0];
  r.b1 = b[1];
  r.b2 = b[2];
  r.b3 = b[3];
  r.m = p.m();
  r.kp2 = 1.0 - r.m;
  r.d01 = b[0] - b[1];
  r.d23 = b[2] - b[3];
  const cplx r01 = std::sqrt(std::sqrt(r.d01));
  const cplx r23 = std::sqrt(std::sqrt(r.d23));
  const cplx sk = std::sqrt(p.k());
  r.a = r23 / (r01 * r01 * r01 * sk * sk * sk);
  r.c = 1.0 / (2.0 * r.d01 * r.m);
  r.e = 1.0 / (8.0 * std::pow(r01, 5) * r23 * std::pow(sk, 5));
  return r;
}

bool series_available(const PotentialParams& p) {
  const auto& b = p.b();
  return p.generic() && b[0] != 0.0 && b[2] != 0.0 && p.k() != 0.0;
}

cplx saddle_z(const PotentialParams& p, int index, const TurningContext& ctx) {
  if (index == 5 && ctx.z5) return *ctx.z5;
  if (index == 6 && ctx.z6) return *ctx.z6;
  return saddle_predictions(p)[index - 1];
}

cplx saddle_u(const PotentialParams& p, int index, const TurningContext& ctx) {
  if (index == 5 && ctx.u5) return *ctx.u5;
  if (index == 6 && ctx.u6) return *ctx.u6;
  return eval_u_of_z(saddle_z(p, index, ctx), p);
}

cplx anchor_u(const PotentialParams& p, const TurningContext& ctx) {
  if (ctx.u_anchor) return *ctx.u_anchor;
  return eval_u_of_z(saddle_predictions(p)[0], p);
}

double bk_scale(const PotentialParams& p) {
  return p.coupling_scale() * std::abs(p.k());
}

// Exact roots of Q4 at lambda; the two nearest `center` come first, then
// the remaining two by increasing magnitude.
std::array<cplx, 4> roots_around(const PotentialParams& p, cplx lambda,
                                 cplx center) {
  const auto c4 = q4_coefficients(p, lambda);
  std::vector<cplx> z = poly::roots(std::vector<cplx>(c4.begin(), c4.end()));
  std::sort(z.begin(), z.end(), [&](cplx a, cplx b) {
    return std::abs(a - center) < std::abs(b - center);
  });
  if (std::abs(z[2]) > std::abs(z[3])) std::swap(z[2], z[3]);
  return {z[0], z[1], z[2], z[3]};
}

SeriesExpansion make_series(const char* family, SeriesVariable v, int lead,
                            std::vector<cplx> c, int order) {
  if (static_cast<int>(c.size()) > order + 1) c.resize(order + 1);
  return {family, v, lead, std::move(c)};
}

// Small-parameter value for the regime's series.
cplx regime_parameter(const PotentialParams& p, TurningRegime r, cplx lambda,
                      const TurningContext& ctx) {
  switch (r) {
    case TurningRegime::kNear5:
      return lambda - saddle_u(p, 5, ctx);
    case TurningRegime::kNear6:
      return lambda - saddle_u(p, 6, ctx);
    default:
      return 1.0 / (lambda - anchor_u(p, ctx));
  }
}

std::array<cplx, 4> leading_prediction(const PotentialParams& p,
                                       TurningRegime r, cplx lambda,
                                       const TurningContext& ctx) {
  const cplx t = regime_parameter(p, r, lambda, ctx);
  const TurningSeries s =
      turning_series(p, r, t, 1, SeriesBase::kLeadingOrder, ctx);
  std::array<cplx, 4> out;
  for (int i = 0; i < 4; ++i) {
    const SpherePoint sp = s.evaluate(i, t);
    out[i] = sp.reciprocal ? 1.0 / sp.coord : sp.coord;
  }
  return out;
}

TurningRegime detect_regime(const PotentialParams& p, cplx lambda,
                            const TurningContext& ctx) {
  if (!series_available(p)) return TurningRegime::kIndexOrder;
  const double bk = bk_scale(p);
  const double r5 = std::abs(lambda - saddle_u(p, 5, ctx)) / bk;
  const double r6 = std::abs(lambda - saddle_u(p, 6, ctx)) / bk;
  const double rl =
      p.coupling_scale() / std::abs(lambda - anchor_u(p, ctx));
  if (std::min(r5, r6) <= kRegimeFactor) {
    return r5 <= r6 ? TurningRegime::kNear5 : TurningRegime::kNear6;
  }
  if (rl <= kRegimeFactor) return TurningRegime::kLargeLambda;
  return TurningRegime::kIndexOrder;
}

}  // namespace

const char* turning_regime_name(TurningRegime r) {
  switch (r) {
    case TurningRegime::kNear5:
      return "near5";
    case TurningRegime::kNear6:
      return "near6";
    case TurningRegime::kLargeLambda:
      return "largeLambda";
    case TurningRegime::kIndexOrder:
      return "indexOrder";
  }
  return "unknown";
}

TurningContext make_turning_context(const PotentialParams& p) {
  TurningContext ctx;
  if (!series_available(p)) return ctx;
  try {
    const SaddleSearch s = find_saddles_tolerant(p);
    if (s.degenerate || !s.labeled_by_series) return ctx;
    ctx.z5 = s.saddles[4].z_star;
    ctx.z6 = s.saddles[5].z_star;
    ctx.u5 = s.saddles[4].u_star;
    ctx.u6 = s.saddles[5].u_star;
    ctx.u_anchor = s.saddles[0].u_star;
  } catch (const Error&) {
    // Leading-order formulas remain available.
  }
  return ctx;
}

std::array<cplx, 5> q4_coefficients(const PotentialParams& p, cplx lambda) {
  const auto& b = p.b();
  const cplx m = p.m();
  return {b[0] * m * m,
          -((lambda + b[0] - b[1]) * m + (b[0] - b[3]) * m * m),
          lambda + (lambda + b[0] - 2.0 * b[1] + b[2] - 2.0 * b[3]) * m,
          -(lambda + b[2] - b[3] - (b[1] - b[2]) * m),
          b[2]};
}

cplx cross_ratio(cplx z1, cplx z2, cplx z3, cplx z4) {
  const cplx den = (z1 - z4) * (z2 - z3);
  if (den == 0.0 || !std::isfinite(std::abs(den))) {
    fail(ErrorCode::kDegenerate, "cross_ratio: zero denominator");
  }
  return (z1 - z2) * (z3 - z4) / den;
}

cplx regime_cross_ratio(TurningRegime r, const std::array<cplx, 4>& z) {
  switch (r) {
    case TurningRegime::kNear5:
      return cross_ratio(z[2], z[1], z[0], z[3]);
    case TurningRegime::kNear6:
      return cross_ratio(z[1], z[2], z[0], z[3]);
    case TurningRegime::kLargeLambda:
      return cross_ratio(z[1], z[0], z[2], z[3]);
    case TurningRegime::kIndexOrder:
      break;
  }
  return cross_ratio(z[0], z[1], z[2], z[3]);
}

SpherePoint SpherePoint::from(cplx z) {
  if (std::abs(z) > kFarField) return {1.0 / z, true};
  return {z, false};
}

TurningPointSet find_turning_points(const PotentialParams& p, cplx lambda) {
  return find_turning_points(p, lambda, make_turning_context(p));
}

TurningPointSet find_turning_points(const PotentialParams& p, cplx lambda,
                                    const TurningContext& ctx) {
  const auto c4 = q4_coefficients(p, lambda);
  double cmax = 0.0;
  for (const cplx& v : c4) cmax = std::max(cmax, std::abs(v));
  if (cmax == 0.0) {
    fail(ErrorCode::kDegenerate, "find_turning_points: Q4 vanishes");
  }
  if (std::abs(c4[0]) <= 1e-200 * cmax) {
    fail(ErrorCode::kLeadingZero, "find_turning_points: b0 k^4 vanishes");
  }
  std::vector<cplx> z = poly::roots(std::vector<cplx>(c4.begin(), c4.end()));
  if (poly::min_relative_separation(z) < kRootMergeTol) {
    fail(ErrorCode::kDegenerate, "find_turning_points: double root");
  }

  TurningPointSet out;
  out.lambda = lambda;
  out.regime = detect_regime(p, lambda, ctx);
  if (out.regime == TurningRegime::kIndexOrder) {
    std::stable_sort(z.begin(), z.end(),
                     [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    for (int t = 0; t < 4; ++t) out.roots[t] = z[t];
  } else {
    const auto pred = leading_prediction(p, out.regime, lambda, ctx);
    const auto label = poly::best_assignment(4, [&](int i, int j) {
      return poly::chordal_distance(z[i], pred[j]);
    });
    for (int i = 0; i < 4; ++i) out.roots[label[i]] = z[i];
  }
  out.cross_ratio = regime_cross_ratio(out.regime, out.roots);
  return out;
}

SpherePoint TurningSeries::evaluate(int t, cplx small_param) const {
  const SeriesExpansion& s = z[t];
  if (small_param == 0.0 && s.leading_power < 0) return SpherePoint::infinity();
  cplx arg = small_param;
  if (s.variable == SeriesVariable::kDeltaHalf ||
      s.variable == SeriesVariable::kDeltaHatHalf) {
    arg = std::sqrt(small_param);
  }
  return SpherePoint::from(s.evaluate(arg));
}

TurningSeries turning_series(const PotentialParams& p, TurningRegime regime,
                             cplx small_param, int order, SeriesBase base,
                             const TurningContext& ctx) {
  if (order < 0) fail(ErrorCode::kInvalidArgument, "turning_series: order < 0");
  if (!series_available(p)) {
    fail(ErrorCode::kDegenerate,
         "turning_series: needs b0 != b1, b2 != b3, b0 b2 k != 0");
  }
  const RegimeConstants r = regime_constants(p);
  TurningSeries out;
  out.regime = regime;

  if (regime == TurningRegime::kNear5 || regime == TurningRegime::kNear6) {
    const bool six = regime == TurningRegime::kNear6;
    if (std::abs(small_param) > kRegimeFactor * bk_scale(p)) {
      fail(ErrorCode::kRegimeViolation,
           "turning_series: |delta| not small against |b||k|");
    }
    cplx z1_0 = r.b2 / r.d23;
    cplx z4_0 = (1.0 - r.b1 / r.b0) / r.m;
    cplx zs = saddle_z(p, six ? 6 : 5, ctx);
    if (base == SeriesBase::kNumericBase) {
      const auto ex = roots_around(p, saddle_u(p, six ? 6 : 5, ctx), zs);
      zs = 0.5 * (ex[0] + ex[1]);
      z1_0 = ex[2];
      z4_0 = ex[3];
    } else {
      zs = saddle_predictions(p)[six ? 5 : 4];
    }
    const cplx z1_1 = r.b2 * r.b3 / std::pow(r.d23, 3);
    const cplx z1_2 = (r.b2 + r.b3) * r.b2 * r.b3 / std::pow(r.d23, 5);
    const cplx z4_1 = -r.b1 / (r.b0 * r.d01 * r.m);
    const cplx z4_2 = -r.b1 / (std::pow(r.d01, 3) * r.m);
    // Near x*6 the half-power terms acquire a factor i on the z2 branch.
    const cplx a = six ? kI * r.a : -r.a;
    const cplx e = six ? -kI * r.e : -r.e;
    const SeriesVariable v = six ? SeriesVariable::kDeltaHat
                                 : SeriesVariable::kDelta;
    const SeriesVariable vh = six ? SeriesVariable::kDeltaHatHalf
                                  : SeriesVariable::kDeltaHalf;
    const char* fam = six ? "turning.near6" : "turning.near5";
    out.z[0] = make_series(fam, v, 0, {z1_0, z1_1, z1_2}, order);
    out.z[1] = make_series(fam, vh, 0, {zs, a, r.c, e}, order);
    out.z[2] = make_series(fam, vh, 0, {zs, -a, r.c, -e}, order);
    out.z[3] = make_series(fam, v, 0, {z4_0, z4_1, z4_2}, order);
    return out;
  }

  if (regime != TurningRegime::kLargeLambda) {
    fail(ErrorCode::kInvalidArgument, "turning_series: unknown regime");
  }
  if (p.coupling_scale() * std::abs(small_param) > kRegimeFactor) {
    fail(ErrorCode::kRegimeViolation,
         "turning_series: |deltatilde| not large against |b|");
  }
  const cplx us = anchor_u(p, ctx);
  const cplx m = r.m, kp2 = r.kp2;
  const cplx w2 = r.b3 + r.b1 * m - us;
  const SeriesVariable v = SeriesVariable::kInvDeltaTilde;
  const char* fam = "turning.largeLambda";
  out.z[0] = make_series(
      fam, v, 0,
      {1.0, -r.b3 * kp2, -r.b3 * kp2 * (r.b2 + r.b0 * m + r.b3 * m - us)},
      order);
  out.z[1] = make_series(
      fam, v, 0,
      {0.0, r.b2, r.b2 * w2,
       r.b2 * (r.b2 * (r.b0 * m - r.b1 * kp2 * m + r.b3 * kp2) + w2 * w2)},
      order);
  out.z[2] = make_series(
      fam, v, 0,
      {1.0 / m, r.b1 * kp2 / m, r.b1 * kp2 * (r.b0 + r.b1 + r.b2 * m - us) / m},
      order);
  out.z[3] = make_series(
      fam, v, -1,
      {1.0 / (r.b0 * m), -(r.b1 + r.b3 * m - us) / (r.b0 * m),
       -(r.b1 * kp2 + m * (r.b2 - r.b3 * kp2)) / m},
      order);
  return out;
}

SampledControl sample_control(const PotentialParams& p,
                              const EigenvalueControl& control, int samples,
                              const TurningContext& ctx) {
  if (const auto* s = std::get_if<SampledControl>(&control)) {
    if (s->sigma.size() != s->lambda.size() || s->lambda.size() < 2) {
      fail(ErrorCode::kInvalidArgument,
           "sample_control: need >= 2 matching (sigma, lambda) samples");
    }
    return *s;
  }
  if (samples < 2) {
    fail(ErrorCode::kInvalidArgument, "sample_control: samples < 2");
  }
  SampledControl out;
  const cplx u5 = saddle_u(p, 5, ctx);
  if (const auto* lin = std::get_if<LinearControl>(&control)) {
    const cplx u6 = saddle_u(p, 6, ctx);
    for (int j = 0; j < samples; ++j) {
      const double s = static_cast<double>(j) / (samples - 1);
      out.sigma.push_back(s);
      out.lambda.push_back(u5 + s * (u6 - u5) + lin->delta);
    }
    return out;
  }
  const auto& ex = std::get<ExponentialControl>(control);
  if (!(ex.sigma_max >= 0.0 && ex.sigma_max < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "sample_control: sigma_max not in [0,1)");
  }
  for (int j = 0; j < samples; ++j) {
    const double s = ex.sigma_max * j / (samples - 1);
    out.sigma.push_back(s);
    out.lambda.push_back(u5 + ex.delta +
                         ex.amplitude * (1.0 - std::exp(ex.rate * s / (s - 1.0))));
  }
  return out;
}

TrajectoryRecord trace_trajectory(const PotentialParams& p,
                                  const EigenvalueControl& control,
                                  int samples) {
  return trace_trajectory(p, control, samples, make_turning_context(p));
}

TrajectoryRecord trace_trajectory(const PotentialParams& p,
                                  const EigenvalueControl& control,
                                  int samples, const TurningContext& ctx) {
  const SampledControl path = sample_control(p, control, samples, ctx);
  TrajectoryRecord rec;
  rec.control_samples = path.sigma;
  rec.lambda_path = path.lambda;

  const TurningPointSet first = find_turning_points(p, path.lambda[0], ctx);
  rec.initial_regime = first.regime;
  std::array<cplx, 4> prev = first.roots;
  for (int t = 0; t < 4; ++t) rec.root_paths[t].push_back(prev[t]);

  for (size_t j = 1; j < path.lambda.size(); ++j) {
    const auto c4 = q4_coefficients(p, path.lambda[j]);
    const std::vector<cplx> z =
        poly::roots(std::vector<cplx>(c4.begin(), c4.end()));
    const auto label = poly::best_assignment(4, [&](int i, int t) {
      return poly::chordal_distance(z[i], prev[t]);
    });
    std::array<cplx, 4> next;
    for (int i = 0; i < 4; ++i) next[label[i]] = z[i];
    if (poly::min_relative_separation(
            std::vector<cplx>(next.begin(), next.end())) < kCollisionTol) {
      fail(ErrorCode::kCollisionDetected,
           "trace_trajectory: turning points collide at varsigma = " +
               std::to_string(path.sigma[j]));
    }
    for (int t = 0; t < 4; ++t) rec.root_paths[t].push_back(next[t]);
    prev = next;
  }
  return rec;
}

}  // namespace ellhill
