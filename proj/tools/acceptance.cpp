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

// Release acceptance checks. One PASS/FAIL line per criterion; the exit
// status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ellhill/floquet.hpp"
#include "ellhill/saddle.hpp"
#include "ellhill/turning.hpp"
#include "ellhill/verify.hpp"

namespace {

using namespace ellhill;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::array<cplx, 4> reference_sqrt_b() {
  auto pol = [](double r, double a) { return std::polar(r, a * kPi / 3.0); };
  return {pol(std::sqrt(6.0), 0.5), pol(3.0, 1.7), pol(std::sqrt(14.0), 4.2),
          pol(std::sqrt(18.0), 5.4)};
}

PotentialParams reference(cplx k) {
  return PotentialParams::from_sqrt_couplings(reference_sqrt_b(), k);
}

const cplx kFigureK = std::polar(0.2, kPi / 4.0);
const cplx kDelta{0.1, 0.1};

// 1. Leading-order saddle formulas against Q6 roots and Cauchy g-coefficients.
Outcome saddle_asymptotics() {
  const PotentialParams p = reference(0.01);
  const std::vector<SaddlePoint> s = find_saddles(p);
  double worst = 0.0;
  std::string where;
  auto note = [&](double e, const std::string& what) {
    if (e > worst) {
      worst = e;
      where = what;
    }
  };
  for (int pair = 1; pair <= 3; ++pair) {
    for (const auto& ser : saddle_series(p, pair)) {
      const SaddlePoint& sp = s[ser.index - 1];
      const SeriesExpansion g = g_coefficients(sp, p, 3);
      const cplx t = ser.z_star.variable == SeriesVariable::kK ? p.k() : p.m();
      const std::string id = " of saddle " + std::to_string(ser.index);
      note(rel(ser.z_star.evaluate(t), sp.z_star), "z" + id);
      note(rel(ser.u_star, sp.u_star), "u" + id);
      note(rel(ser.g2, g.coefficients[2]), "g2" + id);
      // g3 is odd under x* -> -x*, the other representative of the class.
      if (ser.g3) {
        note(std::min(rel(*ser.g3, g.coefficients[3]),
                      rel(-*ser.g3, g.coefficients[3])),
             "g3" + id);
      }
    }
  }
  return {worst < 1e-2, fmt("max relative error %.3g (%s), bound 1e-2",
                            worst, where.c_str())};
}

// 2. Reference points at k = 0.2 e^{i pi/4}, one decimal each.
Outcome figure_points() {
  const PotentialParams p = reference(kFigureK);
  const std::vector<SaddlePoint> s = find_saddles(p);
  const TurningContext ctx = make_turning_context(p);
  const TurningPointSet t = find_turning_points(p, *ctx.u5 + kDelta, ctx);
  struct Check {
    const char* name;
    cplx got, expected;
  };
  const Check checks[] = {{"z*1", s[0].z_star, {-28.6, -13.0}},
                          {"z*2", s[1].z_star, {29.5, -34.2}},
                          {"z4", t.roots[3], {-2.9, -64.3}}};
  bool pass = true;
  std::string detail;
  for (const auto& c : checks) {
    const double dr = std::abs(c.got.real() - c.expected.real());
    const double di = std::abs(c.got.imag() - c.expected.imag());
    pass = pass && dr <= 0.05 && di <= 0.05;
    detail += fmt("%s=%.3f%+.3fi ", c.name, c.got.real(), c.got.imag());
  }
  return {pass, detail + "(+-0.05 per component)"};
}

// 3. Hierarchy and cross ratio in the near-z*5 and large-lambda regimes.
Outcome turning_hierarchy() {
  const PotentialParams p = reference(0.01);
  const auto& b = p.b();
  const cplx k = p.k();
  const TurningContext ctx = make_turning_context(p);
  const cplx delta = 1e-4 * p.coupling_scale() * std::abs(k);
  const TurningPointSet t = find_turning_points(p, *ctx.u5 + delta, ctx);
  const auto& z = t.roots;
  const double hierarchy = std::abs(z[2] - z[1]) / std::abs(z[1] - z[0]);
  const double pred =
      2.0 * std::sqrt(std::abs(delta)) /
      std::abs(std::pow(b[0] - b[1], 0.25) * std::pow(b[2] - b[3], 0.25) *
               std::sqrt(k));
  const double r5 = std::abs(t.cross_ratio) / pred;
  const TurningPointSet far = find_turning_points(
      p, *ctx.u_anchor + 1e3 * p.coupling_scale(), ctx);
  const double r_far =
      std::abs(far.cross_ratio) / std::abs(k * k / (1.0 - k * k));
  auto within = [](double r) { return r <= 1.5 && r >= 1.0 / 1.5; };
  const bool pass = t.regime == TurningRegime::kNear5 &&
                    far.regime == TurningRegime::kLargeLambda &&
                    hierarchy < 0.1 && within(r5) && within(r_far);
  return {pass, fmt("|z3-z2|/|z2-z1| = %.3g, cross ratio / prediction = %.3f "
                    "(near5), %.3f (largeLambda)",
                    hierarchy, r5, r_far)};
}

// Smallest over matchings of the worst per-root error.
double best_matching(const std::array<cplx, 4>& roots,
                     const std::function<double(int, cplx)>& err) {
  std::array<int, 4> perm{0, 1, 2, 3};
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, err(perm[i], roots[i]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// 4. Endpoints of the linear and exponential trajectories, 500 samples.
Outcome trajectory_endpoints() {
  const PotentialParams p = reference(kFigureK);
  const TurningContext ctx = make_turning_context(p);
  const TrajectoryRecord lin =
      trace_trajectory(p, LinearControl{kDelta}, 500, ctx);
  const cplx z2 = lin.root_paths[1].back(), z3 = lin.root_paths[2].back();
  const double spread = std::abs(z3 - z2);
  const double d_lin =
      std::max(std::abs(z2 - *ctx.z6), std::abs(z3 - *ctx.z6)) / spread;

  const TrajectoryRecord ex =
      trace_trajectory(p, ExponentialControl{kDelta}, 500, ctx);
  std::array<cplx, 4> ends;
  for (int i = 0; i < 4; ++i) ends[i] = ex.root_paths[i].back();
  const cplx pole = 1.0 / p.m();
  // Targets 0, 1, 1/k^2 and infinity; the far root is judged by 1/z.
  const double d_exp = best_matching(ends, [&](int target, cplx z) {
    switch (target) {
      case 0: return std::abs(z);
      case 1: return std::abs(z - 1.0);
      case 2: return rel(z, pole);
      default: return 1.0 / std::abs(z);
    }
  });
  return {d_lin <= 2.0 && d_exp <= 5e-2,
          fmt("linear: max |z2,z3 - z*6| = %.3f |z3-z2| (bound 2); "
              "exponential: worst endpoint error %.3g (bound 5e-2)",
              d_lin, d_exp)};
}

// 5. Free particle over 2K.
Outcome free_particle() {
  const PotentialParams p = PotentialParams::from_couplings({}, 0.01);
  const SpectralContext ctx = make_spectral_context(p);
  double worst = 0.0, worst_det = 0.0;
  for (const cplx l : {cplx(4.0), cplx(9.0), cplx(2.5, 0.7)}) {
    const MonodromyResult m = monodromy(
        p, l, PeriodTag::k2K, default_base_point(p, PeriodTag::k2K, ctx), ctx);
    worst = std::max({worst, std::abs(m.mu_plus - std::sqrt(l)),
                      std::abs(m.mu_minus + std::sqrt(l))});
    worst_det = std::max(worst_det, std::abs(m.det - 1.0));
  }
  return {worst < 1e-8 && worst_det < 1e-8,
          fmt("max |mu -+ sqrt(lambda)| = %.3g, max |det M - 1| = %.3g "
              "(bound 1e-8)",
              worst, worst_det)};
}

// 6 and 7. Seeded round trips along the k ladder.
Outcome round_trip(FloquetCase c) {
  const PeriodTag tag = period_of(c);
  std::vector<double> errors;
  std::string detail;
  for (const double kv : {0.02, 0.01, 0.005}) {
    const PotentialParams p = reference(kv);
    const SpectralContext ctx = make_spectral_context(p);
    const cplx kp = p.modulus().k_prime;
    const cplx base = default_base_point(p, tag, ctx);
    double err = 0.0;
    for (const int n : {1, 2}) {
      // i mu + 1/2 = n in case A; the dual index in case B.
      const cplx mu = c == FloquetCase::kA ? (n - 0.5) / kI : (n - 0.5) * kp;
      const cplx inc = eigenvalue_series(c, mu, p, 2, ctx, RegimePolicy::kIgnore);
      const cplx l = (c == FloquetCase::kA ? ctx.u5 : ctx.u6) + inc;
      MonodromyOptions opts;
      opts.mu_seed = mu;
      const MonodromyResult m = monodromy(p, l, tag, base, ctx, opts);
      err = std::max(err, std::abs(m.mu_plus - mu));
    }
    errors.push_back(err);
    detail += fmt("k=%g: %.3g  ", kv, err);
  }
  const bool decreasing = errors[0] > errors[1] && errors[1] > errors[2];
  return {decreasing && errors.back() < 5e-2,
          detail + fmt("(decreasing: %s; bound 5e-2 at k=0.005)",
                       decreasing ? "yes" : "no")};
}

// 8. Case C after one-point calibration.
Outcome case_c_scaling() {
  const PotentialParams p = reference(0.01);
  SpectralContext ctx = make_spectral_context(p);
  ctx.c0 = calibrate_c0(p, ctx, 1e4);
  const cplx l = 400.0 * cplx(1.0, 0.1);
  const MonodromyResult m = monodromy(
      p, l, PeriodTag::k2K, default_base_point(p, PeriodTag::k2K, ctx), ctx);
  const double r = std::abs(m.mu_plus * m.mu_plus - (l - *ctx.c0)) / std::abs(l);
  return {r < 1e-2, fmt("|mu^2 - (lambda - c0)| / |lambda| = %.3g (bound "
                        "1e-2), c0 = %.4f%+.4fi",
                        r, ctx.c0->real(), ctx.c0->imag())};
}

Outcome suite_outcome(const std::vector<SuiteResult>& suites,
                      const std::vector<std::string>& names) {
  bool pass = true;
  std::string detail;
  for (const auto& s : suites) {
    if (std::find(names.begin(), names.end(), s.name) == names.end()) continue;
    pass = pass && s.status == SuiteStatus::kPass;
    detail += fmt("%s %s %.2g/%.0e; ", s.name.c_str(),
                  suite_status_name(s.status), s.residual, s.tolerance);
  }
  return {pass, detail};
}

// 9. Duality of the case A and case B series at 10 random points.
Outcome duality() {
  return suite_outcome(
      run_property_suites(reference(0.01), 9, ToleranceProfile::kDefault),
      {"duality"});
}

// 10. Invariant suites at both reference parameter sets.
Outcome property_suites() {
  const std::vector<std::string> names = {
      "elliptic_identities", "elliptic_periodicity", "potential_forms",
      "saddle_vieta",        "saddle_stationarity",  "turning_residuals",
      "cross_ratio_mobius",  "phi_consistency",      "wronskian"};
  Outcome a = suite_outcome(
      run_property_suites(reference(0.01), 10, ToleranceProfile::kDefault),
      names);
  Outcome b = suite_outcome(
      run_property_suites(reference(kFigureK), 11, ToleranceProfile::kDefault),
      names);
  return {a.pass && b.pass,
          std::string(a.pass && b.pass ? "all pass" : "failures") +
              " at k=0.01 and k=0.2e^{i pi/4}" +
              (a.pass && b.pass ? "" : ": " + a.detail + b.detail)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "saddle asymptotics", 1.0, saddle_asymptotics},
      {2, "figure points", 1.0, figure_points},
      {3, "turning hierarchy", 0.0, turning_hierarchy},
      {4, "trajectory endpoints", 10.0, trajectory_endpoints},
      {5, "free particle", 0.0, free_particle},
      {6, "round trip A", 30.0, [] { return round_trip(FloquetCase::kA); }},
      {7, "round trip B", 30.0, [] { return round_trip(FloquetCase::kB); }},
      {8, "case C scaling", 0.0, case_c_scaling},
      {9, "duality", 0.0, duality},
      {10, "property suites", 60.0, property_suites},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const Error& e) {
      o = {false, std::string(error_code_name(e.code())) + ": " + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    std::string timing = fmt("%.2fs", secs);
    if (c.budget_s > 0.0) {
      timing += fmt(" of %.0fs", c.budget_s);
      o.pass = o.pass && secs < c.budget_s;
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %-4s %-21s %s [%s]\n", c.id,
                o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                timing.c_str());
  }
  std::printf("%d of %zu criteria pass\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
