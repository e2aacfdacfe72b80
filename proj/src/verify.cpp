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

#include "ellhill/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "ellhill/floquet.hpp"
#include "ellhill/polynomial.hpp"
#include "ellhill/quad_differential.hpp"
#include "ellhill/saddle.hpp"
#include "ellhill/turning.hpp"
#include "json.hpp"

namespace ellhill {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

cplx random_disk(Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)),
                    uniform(rng, -kPi, kPi));
}

double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b)));
}

// Random point of the period cell at least margin * min(|K|, |K'|) away
// from every half-period lattice point.
cplx random_cell_point(Rng& rng, const EllipticModulus& mod, double margin) {
  const double scale =
      std::min(std::abs(mod.K), mod.has_imaginary_period()
                                    ? std::abs(mod.K_prime)
                                    : std::abs(mod.K));
  for (;;) {
    cplx x = uniform(rng, 0.0, 2.0) * mod.K;
    if (mod.has_imaginary_period()) {
      x += uniform(rng, 0.0, 2.0) * kI * mod.K_prime;
    } else {
      x += uniform(rng, -1.0, 1.0) * kI * scale;
    }
    if (half_lattice_distance(x, mod) > margin * scale) return x;
  }
}

// Runs body, turning a thrown library error into a failed suite.
SuiteResult run_suite(const std::string& name, double tol,
                      const std::function<void(SuiteResult&)>& body) {
  SuiteResult r;
  r.name = name;
  r.tolerance = tol;
  r.status = SuiteStatus::kPass;
  try {
    body(r);
    if (r.status != SuiteStatus::kSkipped) {
      r.status =
          r.residual <= tol ? SuiteStatus::kPass : SuiteStatus::kFail;
    }
  } catch (const Error& e) {
    r.status = SuiteStatus::kFail;
    r.detail = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return r;
}

void skip(SuiteResult& r, const std::string& why) {
  r.status = SuiteStatus::kSkipped;
  r.detail = why;
}

bool series_couplings(const PotentialParams& p) {
  const auto& b = p.b();
  return p.generic() && b[0] != 0.0 && b[2] != 0.0 && p.k() != 0.0;
}

}  // namespace

const char* suite_status_name(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::kPass:
      return "PASS";
    case SuiteStatus::kFail:
      return "FAIL";
    case SuiteStatus::kSkipped:
      return "SKIPPED";
  }
  return "?";
}

std::vector<SuiteResult> run_property_suites(const PotentialParams& p,
                                             std::uint64_t seed,
                                             ToleranceProfile profile) {
  const double f = profile == ToleranceProfile::kStrict ? 0.1 : 1.0;
  const auto& mod = p.modulus();
  std::vector<SuiteResult> out;
  Rng rng(seed);

  out.push_back(run_suite("elliptic_identities", 1e-10 * f, [&](auto& r) {
    for (int i = 0; i < 1000; ++i) {
      const cplx m = random_disk(rng, 0.9);
      const auto md = EllipticModulus::from_m(m);
      const cplx x = random_cell_point(rng, md, 0.05);
      const JacobiTriple t = jacobi(x, md);
      const double s2 = std::norm(t.sn);
      r.residual = std::max(
          {r.residual, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) / (1.0 + s2),
           std::abs(t.dn * t.dn + m * t.sn * t.sn - 1.0) /
               (1.0 + std::abs(m) * s2)});
    }
    r.detail = "sn^2+cn^2 and dn^2+k^2 sn^2 at 1000 random (x, m)";
  }));

  out.push_back(run_suite("elliptic_periodicity", 1e-9 * f, [&](auto& r) {
    if (!mod.has_imaginary_period()) {
      skip(r, "no imaginary period at k = 0");
      return;
    }
    for (int i = 0; i < 200; ++i) {
      const cplx x = random_cell_point(rng, mod, 0.05);
      const JacobiTriple a = jacobi(x, mod);
      const JacobiTriple b = jacobi(x + 4.0 * mod.K, mod);
      const JacobiTriple c = jacobi(x + 2.0 * kI * mod.K_prime, mod);
      const JacobiTriple d = jacobi(x + 2.0 * mod.K, mod);
      r.residual = std::max({r.residual, rel(a.sn, b.sn), rel(a.sn, c.sn),
                             rel(-a.cn, d.cn), rel(a.dn, d.dn)});
    }
    r.detail = "sn(x+4K), sn(x+2iK'), cn(x+2K), dn(x+2K) at 200 points";
  }));

  out.push_back(run_suite("potential_forms", 1e-9 * f, [&](auto& r) {
    for (int i = 0; i < 1000; ++i) {
      const cplx x = random_cell_point(rng, mod, 0.05);
      r.residual = std::max(r.residual, rel(eval_u(x, p), eval_u_shifted(x, p)));
      if (i < 200) {
        r.residual =
            std::max(r.residual, rel(eval_u(x, p), eval_u(x + 2.0 * mod.K, p)));
        if (mod.has_imaginary_period()) {
          r.residual = std::max(
              r.residual,
              rel(eval_u(x, p), eval_u(x + 2.0 * kI * mod.K_prime, p)));
        }
      }
    }
    r.detail = "direct vs half-period-shifted form, periodicity of u";
  }));

  out.push_back(run_suite("saddle_vieta", 1e-9 * f, [&](auto& r) {
    const auto q6 = q6_coefficients(p);
    if (q6[0] == 0.0) {
      skip(r, "b0 k^6 = 0");
      return;
    }
    const std::vector<cplx> c(q6.begin(), q6.end());
    const auto z = poly::roots(c);
    cplx sum = 0.0;
    double size = 0.0;
    for (const cplx v : z) {
      sum += v;
      size += std::abs(v);
      r.residual =
          std::max(r.residual, std::abs(poly::eval(c, v)) / poly::eval_scale(c, v));
    }
    r.residual = std::max(r.residual, std::abs(sum + c[1] / c[0]) / size);
    r.detail = "Q6 residuals and root sum";
  }));

  out.push_back(run_suite("saddle_stationarity", 1e-8 * f, [&](auto& r) {
    if (q6_coefficients(p)[0] == 0.0) {
      skip(r, "b0 k^6 = 0");
      return;
    }
    const SaddleSearch s = find_saddles_tolerant(p);
    for (const auto& sp : s.saddles) {
      r.residual = std::max(r.residual,
                            std::abs(eval_du(sp.x_star, p)) / std::abs(sp.g2));
      const cplx sn = jacobi(sp.x_star, mod).sn;
      r.residual = std::max(r.residual, rel(sn * sn, sp.z_star) * 10.0);
    }
    r.detail = "|u'(x*)| / |g2| and sn^2 x* = z*";
  }));

  // Eigenvalues around the coupling scale for the Q4 and phi suites.
  const double bscale = std::max(1.0, p.coupling_scale());
  std::vector<cplx> lambdas;
  for (int i = 0; i < 8; ++i) lambdas.push_back(random_disk(rng, 3.0 * bscale));
  const TurningContext tctx = make_turning_context(p);
  if (tctx.u5) lambdas.push_back(*tctx.u5 + 0.1 * cplx(1.0, 1.0));

  out.push_back(run_suite("turning_residuals", 1e-9 * f, [&](auto& r) {
    if (q4_coefficients(p, 0.0)[0] == 0.0) {
      skip(r, "b0 k^4 = 0");
      return;
    }
    for (const cplx l : lambdas) {
      const auto q = q4_coefficients(p, l);
      const std::vector<cplx> c(q.begin(), q.end());
      const TurningPointSet ts = find_turning_points(p, l, tctx);
      cplx sum = 0.0;
      double size = 0.0;
      for (const cplx z : ts.roots) {
        sum += z;
        size += std::abs(z);
        r.residual = std::max(
            r.residual, std::abs(poly::eval(c, z)) / poly::eval_scale(c, z));
        // Residual of u - lambda at the lifted point, against the terms
        // that cancel there.
        const cplx x = inverse_sn2(z, mod);
        if (half_lattice_distance(x, mod) > 1e-6) {
          const double lift =
              std::abs(eval_u(x, p) - l) /
              (std::abs(l) + bscale * (1.0 + std::norm(p.k()) * std::abs(z) +
                                       1.0 / std::abs(z)));
          r.residual = std::max(r.residual, lift * 0.1);
        }
      }
      r.residual = std::max(r.residual, std::abs(sum + c[1] / c[0]) / size);
    }
    r.detail = "Q4 residuals, root sum and lifted u - lambda";
  }));

  out.push_back(run_suite("cross_ratio_mobius", 1e-10 * f, [&](auto& r) {
    for (int i = 0; i < 100; ++i) {
      std::array<cplx, 4> z;
      for (auto& v : z) v = random_disk(rng, 5.0);
      cplx a = random_disk(rng, 2.0), b = random_disk(rng, 2.0),
           c = random_disk(rng, 2.0), d = random_disk(rng, 2.0);
      if (std::abs(a * d - b * c) < 0.1) continue;
      auto T = [&](cplx w) { return (a * w + b) / (c * w + d); };
      const cplx before = cross_ratio(z[0], z[1], z[2], z[3]);
      const cplx after = cross_ratio(T(z[0]), T(z[1]), T(z[2]), T(z[3]));
      r.residual = std::max(r.residual, rel(before, after));
    }
    r.detail = "100 random quadruples and Moebius maps";
  }));

  out.push_back(run_suite("phi_consistency", 1e-9 * f, [&](auto& r) {
    if (q4_coefficients(p, 0.0)[0] == 0.0 || p.k() == 0.0) {
      skip(r, "b0 k^4 = 0");
      return;
    }
    const QuadDifferential q = QuadDifferential::make(p, lambdas.back(), tctx);
    const cplx zk = 1.0 / p.m();
    for (int i = 0; i < 100; ++i) {
      const cplx z = random_disk(rng, 2.0 * std::abs(zk));
      const cplx den = 4.0 * z * z * (z - 1.0) * (z - 1.0) * (z - zk) * (z - zk);
      cplx num = p.b()[0];
      for (const cplx zt : q.turning.roots) num *= z - zt;
      r.residual = std::max(r.residual, rel(phi(q, z) * den, num));
    }
    r.detail = "phi times its denominator against b0 prod (z - z_t)";
  }));

  out.push_back(run_suite("wronskian", 1e-8 * f, [&](auto& r) {
    const SpectralContext ctx = make_spectral_context(p);
    std::vector<PeriodTag> tags{PeriodTag::k2K};
    if (mod.has_imaginary_period()) {
      tags.push_back(PeriodTag::k2iKp);
      tags.push_back(PeriodTag::k2K2iKp);
    }
    const cplx l = ctx.has_saddles ? ctx.u5 + 0.1 * cplx(1.0, 1.0)
                                   : cplx(1.0 + bscale, 0.5);
    MonodromyOptions opts;
    opts.check_winding = false;
    for (const PeriodTag t : tags) {
      const MonodromyResult m =
          monodromy(p, l, t, default_base_point(p, t, ctx), ctx, opts);
      const auto& M = m.matrix;
      const cplx det = M[0] * M[3] - M[1] * M[2];
      const double size = std::max(1.0, std::abs(M[0] * M[3]) + std::abs(M[1] * M[2]));
      r.residual = std::max(
          {r.residual, std::abs(m.det - 1.0), std::abs(det - 1.0) / size});
    }
    r.detail = "det M over every period";
  }));

  out.push_back(run_suite("free_particle", 1e-8 * f, [&](auto& r) {
    const PotentialParams free = PotentialParams::from_couplings({}, p.k());
    const SpectralContext ctx = make_spectral_context(free);
    for (const double l : {1.0, 4.0, 9.5}) {
      MonodromyOptions opts;
      opts.mu_seed = std::sqrt(l);
      const MonodromyResult m = monodromy(
          free, l, PeriodTag::k2K,
          default_base_point(free, PeriodTag::k2K, ctx), ctx, opts);
      r.residual = std::max({r.residual, std::abs(m.mu_plus - std::sqrt(l)),
                             std::abs(m.mu_minus + std::sqrt(l)),
                             std::abs(m.det - 1.0)});
    }
    r.detail = "b = 0: mu = +-sqrt(lambda) over 2K";
  }));

  out.push_back(run_suite("duality", 1e-9 * f, [&](auto& r) {
    for (int i = 0; i < 10; ++i) {
      DualityData a;
      a.k = random_disk(rng, 0.5);
      a.k_prime = std::sqrt(1.0 - a.k * a.k);
      a.sqrt_lambda2 = random_disk(rng, 10.0);
      a.mu = random_disk(rng, 1.0);
      a.delta = series_case_a(a.mu, a.k * a.k, a.sqrt_lambda2);
      const DualityData b = duality_transform(a);
      const cplx db =
          series_case_b(b.mu, b.k * b.k, b.k_prime, b.sqrt_lambda2);
      r.residual = std::max(r.residual, rel(b.delta, db));
    }
    r.detail = "transformed case-A series against case B at 10 points";
  }));
  return out;
}

std::vector<SuiteResult> run_series_suites(const PotentialParams& p,
                                           ToleranceProfile) {
  std::vector<SuiteResult> out;
  const bool usable = series_couplings(p);
  const auto& mod = p.modulus();

  out.push_back(run_suite("saddle_series", 1e-2, [&](auto& r) {
    if (!usable) {
      skip(r, "degenerate or vanishing couplings");
      return;
    }
    const SaddleSearch s = find_saddles_tolerant(p);
    if (s.degenerate) {
      skip(r, "merged saddles");
      return;
    }
    std::string worst;
    for (int pair = 1; pair <= 3; ++pair) {
      for (const auto& ser : saddle_series(p, pair)) {
        const SaddlePoint& sp = s.saddles[ser.index - 1];
        const cplx t = ser.z_star.variable == SeriesVariable::kK ? p.k() : p.m();
        std::vector<std::pair<std::string, double>> errs = {
            {"z", rel(ser.z_star.evaluate(t), sp.z_star)},
            {"u", rel(ser.u_star, sp.u_star)},
            {"g2", rel(ser.g2, sp.g2)}};
        // g3 flips sign with the representative +-x*.
        if (ser.g3) {
          errs.push_back({"g3", std::min(rel(*ser.g3, sp.g3),
                                         rel(-*ser.g3, sp.g3))});
        }
        for (const auto& [what, e] : errs) {
          if (e > r.residual) {
            r.residual = e;
            worst = what + " of saddle " + std::to_string(ser.index);
          }
        }
      }
    }
    r.detail = "worst: " + worst;
  }));

  const SpectralContext ctx = make_spectral_context(p);
  for (const FloquetCase c : {FloquetCase::kA, FloquetCase::kB}) {
    const std::string name =
        std::string("round_trip_") + floquet_case_name(c);
    out.push_back(run_suite(name, 5e-2, [&](auto& r) {
      if (!usable || !ctx.has_saddles) {
        skip(r, "no class-3 saddle data");
        return;
      }
      const PeriodTag tag = period_of(c);
      const cplx base = default_base_point(p, tag, ctx);
      for (const int n : {1, 2}) {
        const cplx mu = c == FloquetCase::kA ? (n - 0.5) / kI
                                             : (n - 0.5) * mod.k_prime;
        const cplx inc =
            eigenvalue_series(c, mu, p, 2, ctx, RegimePolicy::kIgnore);
        const cplx l = (c == FloquetCase::kA ? ctx.u5 : ctx.u6) + inc;
        MonodromyOptions opts;
        opts.mu_seed = mu;
        const MonodromyResult m = monodromy(p, l, tag, base, ctx, opts);
        const cplx nu = c == FloquetCase::kA
                            ? kI * m.mu_plus + 0.5
                            : m.mu_plus / mod.k_prime + 0.5;
        r.residual = std::max(r.residual, std::abs(nu - double(n)));
      }
      r.detail = "seed index n in {1, 2} against the extracted index";
    }));
  }

  out.push_back(run_suite("case_C_scaling", 1e-2, [&](auto& r) {
    SpectralContext cctx = ctx;
    cctx.c0 = calibrate_c0(p, cctx);
    const cplx l = 400.0 * cplx(1.0, 0.1);
    const MonodromyResult m = monodromy(
        p, l, PeriodTag::k2K, default_base_point(p, PeriodTag::k2K, cctx),
        cctx);
    r.residual = std::abs(m.mu_plus * m.mu_plus - (l - *cctx.c0)) / std::abs(l);
    r.detail = "|mu^2 - (lambda - c0)| / |lambda| at lambda = 400(1+0.1i)";
  }));
  return out;
}

std::string verification_report_json(const std::vector<SuiteResult>& suites) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : suites) {
    rows.push_back({{"name", s.name},
                    {"status", suite_status_name(s.status)},
                    {"residual", s.residual},
                    {"tolerance", s.tolerance},
                    {"detail", s.detail}});
  }
  nlohmann::json doc = {{"format_version", 1},
                        {"all_passed", all_passed(suites)},
                        {"suites", rows}};
  return doc.dump(2) + "\n";
}

bool all_passed(const std::vector<SuiteResult>& suites) {
  return std::none_of(suites.begin(), suites.end(), [](const SuiteResult& s) {
    return s.status == SuiteStatus::kFail;
  });
}

}  // namespace ellhill
