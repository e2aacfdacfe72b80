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

#include "ellhill/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"

namespace ellhill {
namespace {

using nlohmann::json;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

double rel_err(cplx approx, cplx exact) {
  const double den = std::abs(exact);
  return den > 0.0 ? std::abs(approx - exact) / den : std::abs(approx);
}

json params_json(const PotentialParams& p) {
  json b = json::array();
  for (const cplx v : p.b()) b.push_back(cjson(v));
  return {{"b", b}, {"k", cjson(p.k())}};
}

void append_row(std::string& out, std::initializer_list<double> cols) {
  bool first = true;
  for (const double v : cols) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string saddles_json(const PotentialParams& p) {
  const SaddleSearch search = find_saddles_tolerant(p);
  // Series rows by index, when the couplings allow the expansions.
  std::array<std::optional<SaddleSeriesPoint>, 6> series;
  std::vector<std::string> warnings = search.warnings;
  try {
    for (int pair = 1; pair <= 3; ++pair) {
      for (const auto& s : saddle_series(p, pair)) series[s.index - 1] = s;
    }
  } catch (const Error& e) {
    series = {};
    warnings.push_back(std::string(error_code_name(e.code())) + ": " +
                       e.what());
  }
  json rows = json::array();
  for (const SaddlePoint& s : search.saddles) {
    json row = {{"index", s.index},
                {"class", saddle_class_name(s.cls)},
                {"z_star", cjson(s.z_star)},
                {"x_star", cjson(s.x_star)},
                {"u_star", cjson(s.u_star)},
                {"g2", cjson(s.g2)},
                {"g3", cjson(s.g3)}};
    const auto& ser = series[s.index - 1];
    if (ser) {
      const cplx t = ser->z_star.variable == SeriesVariable::kK ? p.k() : p.m();
      const cplx z = ser->z_star.evaluate(t);
      json cmp = {{"z_star", cjson(z)},
                  {"u_star", cjson(ser->u_star)},
                  {"g2", cjson(ser->g2)},
                  {"rel_err_z", rel_err(z, s.z_star)},
                  {"rel_err_u", rel_err(ser->u_star, s.u_star)},
                  {"rel_err_g2", rel_err(ser->g2, s.g2)}};
      if (ser->g3) {
        cmp["g3"] = cjson(*ser->g3);
        // g3 flips sign with the representative +-x*.
        cmp["rel_err_g3"] =
            std::min(rel_err(*ser->g3, s.g3), rel_err(-*ser->g3, s.g3));
      } else {
        cmp["g3"] = nullptr;
        cmp["rel_err_g3"] = nullptr;
      }
      row["series"] = cmp;
    } else {
      row["series"] = nullptr;
    }
    rows.push_back(row);
  }
  json doc = {{"format_version", kExportFormatVersion},
              {"params", params_json(p)},
              {"degenerate", search.degenerate},
              {"labeled_by_series", search.labeled_by_series},
              {"warnings", warnings},
              {"saddles", rows}};
  return doc.dump(2) + "\n";
}

std::string turning_json(const TurningPointSet& s) {
  json roots = json::array();
  for (const cplx z : s.roots) roots.push_back(cjson(z));
  json doc = {{"format_version", kExportFormatVersion},
              {"lambda", cjson(s.lambda)},
              {"regime", turning_regime_name(s.regime)},
              {"roots", roots},
              {"cross_ratio", cjson(s.cross_ratio)}};
  return doc.dump(2) + "\n";
}

std::string trajectory_csv(const TrajectoryRecord& r) {
  std::string out =
      "varsigma,re_lambda,im_lambda,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3,"
      "re_z4,im_z4\n";
  for (size_t i = 0; i < r.lambda_path.size(); ++i) {
    const cplx l = r.lambda_path[i];
    const auto& z = r.root_paths;
    append_row(out, {r.control_samples[i], l.real(), l.imag(), z[0][i].real(),
                     z[0][i].imag(), z[1][i].real(), z[1][i].imag(),
                     z[2][i].real(), z[2][i].imag(), z[3][i].real(),
                     z[3][i].imag()});
  }
  return out;
}

std::string foliation_csv(const FoliationLine& line) {
  std::string out = "s,re_z,im_z,cumulative_wkb_length\n";
  for (size_t i = 0; i < line.points.size(); ++i) {
    // The line is parametrized by its WKB length, so both columns agree.
    append_row(out, {line.arc[i], line.points[i].real(), line.points[i].imag(),
                     line.arc[i]});
  }
  return out;
}

std::string foliation_manifest_json(
    const QuadDifferential& q, double theta,
    const std::vector<FoliationManifestEntry>& entries) {
  json turning = json::array();
  for (const cplx z : q.turning.roots) turning.push_back(cjson(z));
  json lines = json::array();
  for (const auto& e : entries) {
    json row = {{"file", e.file},
                {"turning_point", e.turning_point},
                {"terminal", foliation_terminal_name(e.line.terminal)},
                {"terminal_index", e.line.terminal_index},
                {"wkb_length", e.line.wkb_length},
                {"points", e.line.points.size()}};
    if (!e.line.points.empty()) {
      row["start"] = cjson(e.line.points.front());
      row["end"] = cjson(e.line.points.back());
    }
    lines.push_back(row);
  }
  json doc = {{"format_version", kExportFormatVersion},
              {"params", params_json(q.params)},
              {"lambda", cjson(q.lambda)},
              {"theta", theta},
              {"turning_points", turning},
              {"lines", lines}};
  return doc.dump(2) + "\n";
}

std::string spectrum_json(const std::vector<SpectrumRecord>& records) {
  json rows = json::array();
  for (const auto& r : records) {
    json row = {{"case", floquet_case_name(r.result.case_tag)},
                {"period", period_tag_name(r.result.period_tag)},
                {"lambda", cjson(r.lambda)},
                {"mu_plus", cjson(r.result.mu_plus)},
                {"mu_minus", cjson(r.result.mu_minus)},
                {"C_T", cjson(r.result.C_T)},
                {"residual", std::abs(r.result.det - 1.0)},
                {"seeded", r.result.seeded},
                {"base_point", cjson(r.result.base_point)}};
    if (r.series_residual) {
      row["series_residual"] = *r.series_residual;
    } else {
      row["series_residual"] = nullptr;
    }
    rows.push_back(row);
  }
  json doc = {{"format_version", kExportFormatVersion}, {"records", rows}};
  return doc.dump(2) + "\n";
}

std::string landscape_csv(const LandscapeGrid& g) {
  std::string out = "re_x,im_x,abs_u,arg_u\n";
  for (size_t i = 0; i < g.x_samples.size(); ++i) {
    const cplx x = g.x_samples[i];
    out += format_double(x.real()) + ',' + format_double(x.imag()) + ',';
    if (std::isinf(g.magnitude[i])) {
      out += "inf,\n";
    } else {
      out += format_double(g.magnitude[i]) + ',' + format_double(g.phase[i]) +
             '\n';
    }
  }
  return out;
}

std::string contour_csv(const PotentialParams& p, const std::vector<cplx>& path,
                        int per_segment) {
  if (per_segment < 1) {
    fail(ErrorCode::kInvalidArgument, "contour_csv: per_segment >= 1");
  }
  std::string out = "re_x,im_x,re_z,im_z\n";
  auto row = [&](cplx x) {
    const cplx sn = jacobi(x, p.modulus()).sn;
    const cplx z = sn * sn;
    append_row(out, {x.real(), x.imag(), z.real(), z.imag()});
  };
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    for (int j = 0; j < per_segment; ++j) {
      row(path[i] + (path[i + 1] - path[i]) * (double(j) / per_segment));
    }
  }
  if (!path.empty()) row(path.back());
  return out;
}

}  // namespace ellhill
