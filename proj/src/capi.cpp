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

#include "ellhill/ellhill.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ellhill/export.hpp"
#include "ellhill/floquet.hpp"
#include "ellhill/quad_differential.hpp"
#include "ellhill/saddle.hpp"
#include "ellhill/turning.hpp"
#include "ellhill/verify.hpp"

struct eh_params {
  ellhill::PotentialParams p;
};

struct eh_foliation {
  ellhill::QuadDifferential q;
  double theta;
  std::vector<ellhill::FoliationManifestEntry> lines;
};

namespace {

using ellhill::cplx;

thread_local std::string g_last_error;

cplx to_cplx(eh_complex z) { return {z.re, z.im}; }
eh_complex to_c(cplx z) { return {z.real(), z.imag()}; }

eh_status set_error(eh_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

// Maps library exceptions onto status codes; nothing escapes the ABI.
template <typename F>
eh_status guard(F&& body) {
  try {
    body();
    return EH_OK;
  } catch (const ellhill::Error& e) {
    return set_error(static_cast<eh_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(EH_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(EH_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) ellhill::fail(ellhill::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ellhill::PeriodTag to_tag(eh_period period) {
  switch (period) {
    case EH_PERIOD_2K:
      return ellhill::PeriodTag::k2K;
    case EH_PERIOD_2IKP:
      return ellhill::PeriodTag::k2iKp;
    case EH_PERIOD_2K_2IKP:
      return ellhill::PeriodTag::k2K2iKp;
  }
  ellhill::fail(ellhill::ErrorCode::kInvalidArgument, "unknown period");
}

// Increment of lambda measured by the case's series.
cplx case_increment(ellhill::FloquetCase c, cplx lambda,
                    const ellhill::SpectralContext& ctx) {
  switch (c) {
    case ellhill::FloquetCase::kA:
      return lambda - ctx.u5;
    case ellhill::FloquetCase::kB:
      return lambda - ctx.u6;
    case ellhill::FloquetCase::kC:
      break;
  }
  return lambda;
}

// 1e-3 of the distance from z_t to the nearest other critical point.
double auto_launch_radius(const ellhill::QuadDifferential& q, int t) {
  const cplx zt = q.turning.roots[t];
  double d = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 4; ++s) {
    if (s != t) d = std::min(d, std::abs(q.turning.roots[s] - zt));
  }
  for (const cplx zp : {cplx(0.0), cplx(1.0), 1.0 / q.params.m()}) {
    d = std::min(d, std::abs(zp - zt));
  }
  return 1e-3 * d;
}

}  // namespace

extern "C" {

const char* eh_version(void) { return "1.0.0"; }

const char* eh_status_name(eh_status status) {
  if (status == EH_INTERNAL) return "Internal";
  return ellhill::error_code_name(static_cast<ellhill::ErrorCode>(status));
}

const char* eh_last_error(void) { return g_last_error.c_str(); }

void eh_string_free(char* s) { std::free(s); }

eh_status eh_params_create(const eh_complex b[4], eh_complex k,
                           eh_params** out) {
  return guard([&] {
    require(b != nullptr && out != nullptr, "eh_params_create: null argument");
    std::array<cplx, 4> bb;
    for (int i = 0; i < 4; ++i) bb[i] = to_cplx(b[i]);
    *out = new eh_params{
        ellhill::PotentialParams::from_couplings(bb, to_cplx(k))};
  });
}

eh_status eh_params_create_sqrt(const eh_complex sqrt_b[4], eh_complex k,
                                eh_params** out) {
  return guard([&] {
    require(sqrt_b != nullptr && out != nullptr,
            "eh_params_create_sqrt: null argument");
    std::array<cplx, 4> bb;
    for (int i = 0; i < 4; ++i) bb[i] = to_cplx(sqrt_b[i]);
    *out = new eh_params{
        ellhill::PotentialParams::from_sqrt_couplings(bb, to_cplx(k))};
  });
}

void eh_params_free(eh_params* p) { delete p; }

eh_status eh_params_periods(const eh_params* p, eh_complex* K,
                            eh_complex* K_prime) {
  return guard([&] {
    require(p != nullptr, "eh_params_periods: null params");
    if (K) *K = to_c(p->p.modulus().K);
    if (K_prime) *K_prime = to_c(p->p.modulus().K_prime);
  });
}

eh_status eh_params_generic(const eh_params* p, int* generic) {
  return guard([&] {
    require(p != nullptr && generic != nullptr,
            "eh_params_generic: null argument");
    *generic = p->p.generic() ? 1 : 0;
  });
}

eh_status eh_eval_u(const eh_params* p, eh_complex x, eh_complex* u) {
  return guard([&] {
    require(p != nullptr && u != nullptr, "eh_eval_u: null argument");
    *u = to_c(ellhill::eval_u(to_cplx(x), p->p));
  });
}

eh_status eh_saddle(const eh_params* p, int index, eh_complex* z,
                    eh_complex* x, eh_complex* u) {
  return guard([&] {
    require(p != nullptr, "eh_saddle: null params");
    require(index >= 1 && index <= 6, "eh_saddle: index in 1..6");
    const auto s = ellhill::find_saddles_tolerant(p->p);
    require(static_cast<int>(s.saddles.size()) >= index,
            "eh_saddle: saddle not found");
    const auto& sp = s.saddles[index - 1];
    if (z) *z = to_c(sp.z_star);
    if (x) *x = to_c(sp.x_star);
    if (u) *u = to_c(sp.u_star);
  });
}

eh_status eh_saddles_json(const eh_params* p, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "eh_saddles_json: null argument");
    *out = dup_string(ellhill::saddles_json(p->p));
  });
}

eh_status eh_turning_json(const eh_params* p, eh_complex lambda, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "eh_turning_json: null argument");
    const auto ctx = ellhill::make_turning_context(p->p);
    *out = dup_string(ellhill::turning_json(
        ellhill::find_turning_points(p->p, to_cplx(lambda), ctx)));
  });
}

eh_status eh_landscape_csv(const eh_params* p, eh_complex lower_left,
                           eh_complex upper_right, int nx, int ny,
                           char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "eh_landscape_csv: null argument");
    const ellhill::Window w{to_cplx(lower_left), to_cplx(upper_right)};
    *out = dup_string(ellhill::landscape_csv(ellhill::landscape(p->p, w, nx, ny)));
  });
}

eh_control eh_control_default(eh_control_kind kind) {
  eh_control c;
  c.kind = kind;
  c.delta = {0.1, 0.1};
  c.amplitude = 1000.0;
  c.rate = 0.05;
  c.sigma_max = 0.9;
  return c;
}

eh_status eh_trajectory_csv(const eh_params* p, const eh_control* control,
                            int samples, char** out) {
  return guard([&] {
    require(p != nullptr && control != nullptr && out != nullptr,
            "eh_trajectory_csv: null argument");
    ellhill::EigenvalueControl c;
    if (control->kind == EH_CONTROL_LINEAR) {
      c = ellhill::LinearControl{to_cplx(control->delta)};
    } else if (control->kind == EH_CONTROL_EXPONENTIAL) {
      c = ellhill::ExponentialControl{to_cplx(control->delta),
                                      control->amplitude, control->rate,
                                      control->sigma_max};
    } else {
      ellhill::fail(ellhill::ErrorCode::kInvalidArgument,
                    "eh_trajectory_csv: unknown control kind");
    }
    *out = dup_string(
        ellhill::trajectory_csv(ellhill::trace_trajectory(p->p, c, samples)));
  });
}

eh_status eh_foliation_trace(const eh_params* p, eh_complex lambda,
                             double theta, double launch_radius,
                             double max_length, double tolerance,
                             eh_foliation** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "eh_foliation_trace: null argument");
    require(max_length > 0.0, "eh_foliation_trace: max_length > 0");
    const auto ctx = ellhill::make_turning_context(p->p);
    auto f = std::make_unique<eh_foliation>(eh_foliation{
        ellhill::QuadDifferential::make(p->p, to_cplx(lambda), ctx), theta, {}});
    for (int t = 0; t < 4; ++t) {
      const double r =
          launch_radius > 0.0 ? launch_radius : auto_launch_radius(f->q, t);
      for (const auto& lp : ellhill::launch_points(f->q, t, theta, r)) {
        ellhill::FoliationOptions opts;
        if (tolerance > 0.0) opts.tolerance = tolerance;
        opts.branch_sign = lp.branch_sign;
        opts.initial_length = lp.initial_length;
        ellhill::FoliationManifestEntry e;
        e.turning_point = t;
        e.line = ellhill::trace_foliation(f->q, lp.z, theta, max_length, opts);
        f->lines.push_back(std::move(e));
      }
    }
    *out = f.release();
  });
}

void eh_foliation_free(eh_foliation* f) { delete f; }

size_t eh_foliation_count(const eh_foliation* f) {
  return f == nullptr ? 0 : f->lines.size();
}

eh_status eh_foliation_line_csv(const eh_foliation* f, size_t i, char** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr,
            "eh_foliation_line_csv: null argument");
    require(i < f->lines.size(), "eh_foliation_line_csv: index out of range");
    *out = dup_string(ellhill::foliation_csv(f->lines[i].line));
  });
}

eh_status eh_foliation_manifest_json(const eh_foliation* f,
                                     const char* const* file_names,
                                     char** out) {
  return guard([&] {
    require(f != nullptr && out != nullptr,
            "eh_foliation_manifest_json: null argument");
    auto entries = f->lines;
    for (size_t i = 0; i < entries.size(); ++i) {
      entries[i].file = file_names != nullptr && file_names[i] != nullptr
                            ? file_names[i]
                            : "";
    }
    *out = dup_string(ellhill::foliation_manifest_json(f->q, f->theta, entries));
  });
}

eh_status eh_wkb_period(const eh_params* p, eh_complex lambda, int a, int b,
                        eh_complex* out) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "eh_wkb_period: null argument");
    const auto ctx = ellhill::make_turning_context(p->p);
    const auto q = ellhill::QuadDifferential::make(p->p, to_cplx(lambda), ctx);
    *out = to_c(ellhill::wkb_period(q, a, b));
  });
}

eh_status eh_floquet_contour_csv(const eh_params* p, eh_period period,
                                 char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr,
            "eh_floquet_contour_csv: null argument");
    const ellhill::PeriodTag tag = to_tag(period);
    const auto ctx = ellhill::make_spectral_context(p->p);
    const auto path = ellhill::period_path(
        p->p, tag, ellhill::default_base_point(p->p, tag, ctx));
    *out = dup_string(ellhill::contour_csv(p->p, path, 64));
  });
}

eh_status eh_spectrum_json(const eh_params* p, eh_period period,
                           const eh_complex* lambdas, size_t n,
                           int calibrate_c0, char** out) {
  return guard([&] {
    require(p != nullptr && out != nullptr && (n == 0 || lambdas != nullptr),
            "eh_spectrum_json: null argument");
    const ellhill::PeriodTag tag = to_tag(period);
    const ellhill::FloquetCase c = ellhill::case_of(tag);
    ellhill::SpectralContext ctx = ellhill::make_spectral_context(p->p);
    if (c == ellhill::FloquetCase::kC && calibrate_c0 != 0) {
      ctx.c0 = ellhill::calibrate_c0(p->p, ctx);
    }
    const cplx base = ellhill::default_base_point(p->p, tag, ctx);
    std::vector<ellhill::SpectrumRecord> records;
    for (size_t i = 0; i < n; ++i) {
      ellhill::SpectrumRecord r;
      r.lambda = to_cplx(lambdas[i]);
      r.result = ellhill::monodromy(p->p, r.lambda, tag, base, ctx);
      try {
        const cplx inc = ellhill::eigenvalue_series(
            c, r.result.mu_plus, p->p, 2, ctx, ellhill::RegimePolicy::kIgnore);
        r.series_residual = std::abs(case_increment(c, r.lambda, ctx) - inc);
      } catch (const ellhill::Error&) {
        // No series for these couplings; the record keeps a null residual.
      }
      records.push_back(std::move(r));
    }
    *out = dup_string(ellhill::spectrum_json(records));
  });
}

eh_status eh_floquet_round_trip(const eh_params* p, eh_period period,
                                eh_complex mu, eh_complex* lambda,
                                eh_complex* mu_out) {
  return guard([&] {
    require(p != nullptr, "eh_floquet_round_trip: null params");
    const ellhill::PeriodTag tag = to_tag(period);
    const ellhill::FloquetCase c = ellhill::case_of(tag);
    ellhill::SpectralContext ctx = ellhill::make_spectral_context(p->p);
    if (c == ellhill::FloquetCase::kC) ctx.c0 = ellhill::calibrate_c0(p->p, ctx);
    const cplx m = to_cplx(mu);
    const cplx inc = ellhill::eigenvalue_series(
        c, m, p->p, 2, ctx, ellhill::RegimePolicy::kIgnore);
    const cplx l = c == ellhill::FloquetCase::kA   ? ctx.u5 + inc
                   : c == ellhill::FloquetCase::kB ? ctx.u6 + inc
                                                   : inc;
    ellhill::MonodromyOptions opts;
    opts.mu_seed = m;
    const auto r = ellhill::monodromy(
        p->p, l, tag, ellhill::default_base_point(p->p, tag, ctx), ctx, opts);
    if (lambda) *lambda = to_c(l);
    if (mu_out) *mu_out = to_c(r.mu_plus);
  });
}

eh_status eh_verify_json(const eh_params* p, uint64_t seed,
                         eh_tol_profile profile, char** out, int* passed) {
  return guard([&] {
    require(p != nullptr && out != nullptr, "eh_verify_json: null argument");
    const auto prof = profile == EH_TOL_STRICT
                          ? ellhill::ToleranceProfile::kStrict
                          : ellhill::ToleranceProfile::kDefault;
    auto suites = ellhill::run_property_suites(p->p, seed, prof);
    const auto series = ellhill::run_series_suites(p->p, prof);
    suites.insert(suites.end(), series.begin(), series.end());
    *out = dup_string(ellhill::verification_report_json(suites));
    if (passed) *passed = ellhill::all_passed(suites) ? 1 : 0;
  });
}

}  // extern "C"
