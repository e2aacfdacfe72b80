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

// Text exports. Complex numbers are [re, im] arrays in JSON and re_/im_
// column pairs in CSV; doubles are written in shortest round-trip form so
// equal inputs give byte-identical files.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellhill/floquet.hpp"
#include "ellhill/quad_differential.hpp"
#include "ellhill/saddle.hpp"
#include "ellhill/turning.hpp"

namespace ellhill {

inline constexpr int kExportFormatVersion = 1;

// Six saddles with the leading-order series and relative-error columns
// where the couplings are generic.
std::string saddles_json(const PotentialParams& p);

std::string turning_json(const TurningPointSet& s);

// Columns varsigma, re_lambda, im_lambda, re_z1, im_z1, ..., re_z4, im_z4.
std::string trajectory_csv(const TrajectoryRecord& r);

// Columns s, re_z, im_z, cumulative_wkb_length.
std::string foliation_csv(const FoliationLine& line);

struct FoliationManifestEntry {
  std::string file;
  int turning_point = -1;  // launch turning point, -1 for a free start
  FoliationLine line;
};
std::string foliation_manifest_json(const QuadDifferential& q, double theta,
                                    const std::vector<FoliationManifestEntry>& e);

struct SpectrumRecord {
  MonodromyResult result;
  cplx lambda;
  // |lambda - series(mu+)| where the series applies.
  std::optional<double> series_residual;
};
// residual is |det M - 1|.
std::string spectrum_json(const std::vector<SpectrumRecord>& records);

// Columns re_x, im_x, abs_u, arg_u; singular cells read "inf" and leave
// arg_u empty.
std::string landscape_csv(const LandscapeGrid& g);

// Columns re_x, im_x, re_z, im_z along an x-plane polyline, with
// z = sn^2 x and per_segment samples on each segment.
std::string contour_csv(const PotentialParams& p, const std::vector<cplx>& path,
                        int per_segment);

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace ellhill
