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

#include "ellhill/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ellhill/polynomial.hpp"

namespace ellhill {
namespace {

// Merged-root threshold on the relative separation. Exact double roots
// split by ~sqrt(eps) in the companion eigenvalues, so the cutoff sits
// above that.
constexpr double kMergeTol = 1e-6;

HalfPeriod expansion_point(int index) {
  if (index == 5) return HalfPeriod::kZero;
  if (index == 6) return HalfPeriod::kK;
  return HalfPeriod::kKIKp;
}

// Taylor series (in chi = x - x_*) of the degree-j monomial of the local
// basis about the saddle with this index.
std::vector<std::vector<cplx>> local_basis(int index, int order,
                                           const EllipticModulus& mod) {
  const JacobiTaylor t = taylor_at_halfperiod(expansion_point(index), order, mod);
  const std::vector<cplx>* lead = &t.sn.coefficients;
  std::vector<cplx> odd_factor;
  if (index == 5) {
    lead = &t.sn.coefficients;
    odd_factor = pseries::mul(t.cn.coefficients, t.dn.coefficients);
  } else if (index == 6) {
    lead = &t.cn.coefficients;
    odd_factor = pseries::mul(t.sn.coefficients, t.dn.coefficients);
  } else {
    lead = &t.dn.coefficients;
    odd_factor = pseries::mul(t.sn.coefficients, t.cn.coefficients);
  }
  std::vector<std::vector<cplx>> basis(order + 1);
  for (int j = 2; j <= order; ++j) {
    if (j % 2 == 0) {
      basis[j] = pseries::pow(*lead, j);
    } else {
      basis[j] = pseries::mul(pseries::pow(*lead, j), odd_factor);
    }
  }
  return basis;
}

const char* local_family(int index) {
  if (index == 5) return "lambda";
  if (index == 6) return "lambda_hat";
  return "lambda_tilde";
}

SeriesVariable local_variable(int index) {
  if (index == 5) return SeriesVariable::kSnChi;
  if (index == 6) return SeriesVariable::kCnChiHat;
  return SeriesVariable::kDnChiTilde;
}

std::array<cplx, 6> predictions_unchecked(const PotentialParams& p) {
  const auto& sb = p.sqrt_b();
  const auto& b = p.b();
  const cplx k = p.k();
  const cplx m = p.m();
  const cplx q01 = std::sqrt(b[0] - b[1]);
  const cplx q23 = std::sqrt(b[2] - b[3]);
  return {(sb[0] + sb[1]) / (sb[0] * m), (sb[0] - sb[1]) / (sb[0] * m),
          sb[2] / (sb[2] + sb[3]),       sb[2] / (sb[2] - sb[3]),
          q23 / (q01 * k),               -q23 / (q01 * k)};
}

SaddleSearch search(const PotentialParams& p) {
  const auto c6 = q6_coefficients(p);
  const std::vector<cplx> c(c6.begin(), c6.end());
  double cmax = 0.0;
  for (const cplx& v : c) cmax = std::max(cmax, std::abs(v));
  if (cmax == 0.0 || std::abs(c[0]) <= 1e-200 * cmax) {
    fail(ErrorCode::kLeadingZero, "find_saddles: b0 k^6 vanishes");
  }
  std::vector<cplx> z = poly::roots(c);

  SaddleSearch out;
  if (poly::min_relative_separation(z) < kMergeTol) {
    out.degenerate = true;
    out.warnings.push_back("Degenerate: merged saddle points (double roots of Q6)");
  }

  // label[i] = saddle index (0-based) assigned to root i.
  std::vector<int> label(6);
  const bool use_series = std::abs(p.k()) < 0.3 && p.generic() &&
                          p.b()[0] != 0.0 && p.b()[2] != 0.0;
  if (use_series) {
    const auto pred = predictions_unchecked(p);
    label = poly::best_assignment(6, [&](int i, int j) {
      return std::abs(z[i] - pred[j]) / std::abs(pred[j]);
    });
    out.labeled_by_series = true;
  } else {
    std::vector<int> order(6);
    for (int i = 0; i < 6; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(z[a]) > std::abs(z[b]);
    });
    // Largest pair ~1/k^2, then ~1/k, then O(1).
    const int by_size[6] = {0, 1, 4, 5, 2, 3};
    for (int r = 0; r < 6; ++r) label[order[r]] = by_size[r];
  }

  out.saddles.resize(6);
  for (int i = 0; i < 6; ++i) {
    SaddlePoint& s = out.saddles[label[i]];
    s.index = label[i] + 1;
    s.cls = saddle_class_of(s.index);
    s.z_star = z[i];
    s.x_star = inverse_sn2(z[i], p.modulus());
    s.u_star = eval_u(s.x_star, p);
    try {
      const SeriesExpansion g = g_coefficients(s, p, 3);
      s.g2 = g.coefficients[2];
      s.g3 = g.coefficients[3];
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPoleTooClose) throw;
      s.g2 = s.g3 = cplx(std::nan(""), std::nan(""));
      out.warnings.push_back("saddle " + std::to_string(s.index) +
                             ": too close to a singularity for g_m");
    }
  }
  return out;
}

}  // namespace

const char* saddle_class_name(SaddleClass c) {
  switch (c) {
    case SaddleClass::kPoleAdjacentKiK: return "pole-adjacent-KiK";
    case SaddleClass::kPoleAdjacentK: return "pole-adjacent-K";
    case SaddleClass::kFlatland: return "flatland";
  }
  return "?";
}

SaddleClass saddle_class_of(int index) {
  if (index <= 2) return SaddleClass::kPoleAdjacentKiK;
  if (index <= 4) return SaddleClass::kPoleAdjacentK;
  return SaddleClass::kFlatland;
}

std::array<cplx, 7> q6_coefficients(const PotentialParams& p) {
  const auto& b = p.b();
  const cplx m = p.m();
  const cplx kp2 = 1.0 - m;
  return {
      b[0] * m * m * m,
      -2.0 * b[0] * (1.0 + m) * m * m,
      (b[0] * (1.0 + 4.0 * m + m * m) - b[1] * kp2 - b[2] * m +
       b[3] * kp2 * m) *
          m,
      2.0 * (-b[0] * (1.0 + m) + b[1] * kp2 + b[2] * (1.0 + m) - b[3] * kp2) *
          m,
      b[0] * m - b[1] * kp2 * m - b[2] * (1.0 + 4.0 * m + m * m) + b[3] * kp2,
      2.0 * b[2] * (1.0 + m),
      -b[2],
  };
}

std::vector<SaddlePoint> find_saddles(const PotentialParams& p) {
  SaddleSearch s = search(p);
  if (s.degenerate) {
    fail(ErrorCode::kDegenerate, "find_saddles: two saddle points merged");
  }
  return s.saddles;
}

SaddleSearch find_saddles_tolerant(const PotentialParams& p) {
  return search(p);
}

std::array<cplx, 6> saddle_predictions(const PotentialParams& p) {
  if (!p.generic()) {
    fail(ErrorCode::kDegenerate, "saddle_predictions: b0 = b1 or b2 = b3");
  }
  if (p.k() == 0.0 || p.b()[0] == 0.0 || p.b()[2] == 0.0) {
    fail(ErrorCode::kDegenerate, "saddle_predictions: b0, b2 or k vanishes");
  }
  return predictions_unchecked(p);
}

std::array<SaddleSeriesPoint, 2> saddle_series(const PotentialParams& p,
                                               int pair) {
  if (pair < 1 || pair > 3) {
    fail(ErrorCode::kInvalidArgument, "saddle_series: pair must be 1, 2 or 3");
  }
  const auto& b = p.b();
  const auto& sb = p.sqrt_b();
  if ((pair != 2 && p.degenerate_01()) || (pair != 1 && p.degenerate_23())) {
    fail(ErrorCode::kDegenerate, "saddle_series: degenerate couplings");
  }
  const cplx k = p.k();
  std::array<SaddleSeriesPoint, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double sg = (i == 0) ? 1.0 : -1.0;
    SaddleSeriesPoint& r = out[i];
    r.index = 2 * pair - 1 + i;
    r.z_star.family = "saddle:z*" + std::to_string(r.index);
    auto finite = [](cplx v) -> std::optional<cplx> {
      if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
      return std::nullopt;
    };
    if (pair == 1) {
      const cplx s = sb[0] + sg * sb[1];
      const cplx c = s / sb[0];
      r.z_star.variable = SeriesVariable::kK2;
      r.z_star.leading_power = -1;
      r.z_star.coefficients = {c};
      r.z_leading = c / p.m();
      r.u_star = s * s;
      r.g2 = 4.0 * s * s;
      r.g3 = finite(4.0 * kI * (b[0] - b[1]) * s /
                    (std::sqrt(sb[0]) * std::sqrt(-sg * sb[1])));
    } else if (pair == 2) {
      const cplx s = sb[2] + sg * sb[3];
      const cplx c = sb[2] / s;
      r.z_star.variable = SeriesVariable::kK2;
      r.z_star.coefficients = {c};
      r.z_leading = c;
      r.u_star = s * s;
      r.g2 = 4.0 * s * s;
      r.g3 = finite(4.0 * (b[2] - b[3]) * s /
                    (std::sqrt(sb[2]) * std::sqrt(sg * sb[3])));
    } else {
      const cplx d01 = b[0] - b[1];
      const cplx d23 = b[2] - b[3];
      const cplx q01 = std::sqrt(d01);
      const cplx q23 = std::sqrt(d23);
      const cplx c = sg * q23 / q01;
      r.z_star.variable = SeriesVariable::kK;
      r.z_star.leading_power = -1;
      r.z_star.coefficients = {c};
      r.z_leading = c / k;
      r.u_star = sg * 2.0 * q01 * q23 * k;
      r.g2 = -sg * 4.0 * q01 * q23 * k;
      r.g3 = finite(-sg * 4.0 * kI *
                    (d01 * d01 * (b[2] + b[3]) - d23 * d23 * (b[0] + b[1])) /
                    (d01 * d23) * k * k);
    }
  }
  return out;
}

SeriesExpansion g_coefficients(const SaddlePoint& s, const PotentialParams& p,
                               int order, double radius, int nodes) {
  if (order < 0 || order > 10) {
    fail(ErrorCode::kInvalidArgument, "g_coefficients: order in [0, 10]");
  }
  if (singularity_distance(s.x_star, p) < 1.5 * radius) {
    fail(ErrorCode::kPoleTooClose,
         "g_coefficients: Cauchy contour would cross a singularity");
  }
  std::vector<cplx> values(nodes);
  for (int n = 0; n < nodes; ++n) {
    const double th = 2.0 * kPi * n / nodes;
    values[n] = eval_u(s.x_star + radius * std::polar(1.0, th), p);
  }
  SeriesExpansion g;
  g.family = "g@x*" + std::to_string(s.index);
  g.variable = SeriesVariable::kChi;
  g.coefficients.assign(order + 1, 0.0);
  for (int j = 0; j <= order; ++j) {
    cplx acc = 0.0;
    for (int n = 0; n < nodes; ++n) {
      acc += values[n] * std::polar(1.0, -2.0 * kPi * j * n / nodes);
    }
    g.coefficients[j] = acc / (static_cast<double>(nodes) * std::pow(radius, j));
  }
  return g;
}

SteepestDirections steepest_directions(cplx g2) {
  if (std::abs(g2) < 1e-14) {
    fail(ErrorCode::kZeroCoefficient, "steepest_directions: g2 vanishes");
  }
  const double a = std::arg(g2);
  auto wrap = [](double t) {
    t = std::fmod(t, 2.0 * kPi);
    return t < 0.0 ? t + 2.0 * kPi : t;
  };
  return {wrap(kPi - 0.5 * a), wrap(0.5 * kPi - 0.5 * a)};
}

SeriesExpansion local_coefficients_from_g(const SaddlePoint& s,
                                          const PotentialParams& p,
                                          const SeriesExpansion& g) {
  const int order = g.truncation_order();
  if (order < 2 || order > 8) {
    fail(ErrorCode::kInvalidArgument, "local_coefficients: order in [2, 8]");
  }
  const auto basis = local_basis(s.index, order, p.modulus());
  SeriesExpansion lam;
  lam.family = local_family(s.index);
  lam.variable = local_variable(s.index);
  lam.coefficients.assign(order + 1, 0.0);
  for (int j = 2; j <= order; ++j) {
    cplx r = g.coefficients[j];
    for (int mm = 2; mm < j; ++mm) r -= lam.coefficients[mm] * basis[mm][j];
    lam.coefficients[j] = r / basis[j][j];
  }
  return lam;
}

SeriesExpansion local_coefficients(const SaddlePoint& s,
                                   const PotentialParams& p, int order) {
  return local_coefficients_from_g(s, p, g_coefficients(s, p, order));
}

std::vector<cplx> g_from_local(const SaddlePoint& s, const PotentialParams& p,
                               const SeriesExpansion& local) {
  const int order = local.truncation_order();
  const auto basis = local_basis(s.index, order, p.modulus());
  std::vector<cplx> g(order + 1, 0.0);
  for (int mm = 2; mm <= order; ++mm) {
    for (int j = mm; j <= order; ++j) {
      g[j] += local.coefficients[mm] * basis[mm][j];
    }
  }
  return g;
}

cplx convergence_measure(const SaddlePoint& s, const PotentialParams& p,
                         cplx x) {
  const auto& mod = p.modulus();
  const cplx chi = x - s.x_star;
  if (s.index == 5) return std::sqrt(mod.k) * jacobi(chi, mod).sn;
  if (s.index == 6) return std::sqrt(mod.k) * jacobi(chi + mod.K, mod).cn;
  return jacobi(chi + mod.K + kI * mod.K_prime, mod).dn;
}

bool convergence_region(const SaddlePoint& s, const PotentialParams& p,
                        cplx x) {
  try {
    return std::abs(convergence_measure(s, p, x)) < 1.0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kPole) return false;
    throw;
  }
}

}  // namespace ellhill
