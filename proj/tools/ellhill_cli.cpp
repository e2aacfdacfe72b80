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

// Command-line front end. Talks to the library only through ellhill.h.
// Exit codes: 0 ok, 1 numerical or verification failure, 2 input error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ellhill/ellhill.h"
#include "json.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

// Raised for anything the user can fix in the config or flags.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for a failing library call.
struct LibraryError : std::runtime_error {
  eh_status status;
  LibraryError(eh_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
};

void check(eh_status s, const char* call) {
  if (s == EH_OK) return;
  throw LibraryError(s, std::string(call) + ": " + eh_status_name(s) + ": " +
                            eh_last_error());
}

struct ParamsDeleter {
  void operator()(eh_params* p) const { eh_params_free(p); }
};
using ParamsPtr = std::unique_ptr<eh_params, ParamsDeleter>;

struct FoliationDeleter {
  void operator()(eh_foliation* f) const { eh_foliation_free(f); }
};
using FoliationPtr = std::unique_ptr<eh_foliation, FoliationDeleter>;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out(s);
  eh_string_free(s);
  return out;
}

eh_complex polar(double r, double a) {
  return {r * std::cos(a), r * std::sin(a)};
}

eh_complex parse_complex(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError("field '" + field + "' must be a number or [re, im]");
}

double parse_number(const json& obj, const std::string& key, double def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_number()) {
    throw InputError("field '" + key + "' must be a number");
  }
  return obj[key].get<double>();
}

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 20260101;
  std::string tol_profile = "default";
  std::string figure;
};

// The coupling set used for every default; k is 0.01 for the saddle
// tables and the spectra, 0.2 e^{i pi/4} for the turning-point pictures.
std::array<eh_complex, 4> default_sqrt_b() {
  const double pi = std::numbers::pi;
  return {polar(std::sqrt(6.0), 0.5 * pi / 3), polar(3.0, 1.7 * pi / 3),
          polar(std::sqrt(14.0), 4.2 * pi / 3),
          polar(std::sqrt(18.0), 5.4 * pi / 3)};
}
constexpr eh_complex kSmallK{0.01, 0.0};
const eh_complex kFigureK = polar(0.2, std::numbers::pi / 4);

class Run {
 public:
  Run(const Options& o, json cfg) : opts_(o), cfg_(std::move(cfg)) {}

  int saddles() {
    ParamsPtr p = params(kSmallK);
    const std::string doc = library_string(eh_saddles_json(p.get(), &buf_), "saddles");
    write("saddles.json", doc);
    const json j = json::parse(doc);
    double worst = 0.0;
    for (const auto& s : j["saddles"]) {
      if (s["series"].is_null()) continue;
      for (const char* k : {"rel_err_z", "rel_err_u", "rel_err_g2", "rel_err_g3"}) {
        if (s["series"][k].is_number()) worst = std::max(worst, s["series"][k].get<double>());
      }
    }
    for (const auto& w : j["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
    std::cout << "saddles: " << j["saddles"].size()
              << " found, worst series relative error " << worst << "\n";
    return kExitOk;
  }

  int turning() {
    ParamsPtr p = params(kFigureK);
    const eh_complex l = lambda(p.get(), cfg_);
    write("turning.json",
          library_string(eh_turning_json(p.get(), l, &buf_), "turning"));
    return kExitOk;
  }

  int trajectory() {
    ParamsPtr p = params(kFigureK);
    const json t = section("trajectory");
    eh_control c = eh_control_default(EH_CONTROL_LINEAR);
    const std::string kind = t.value("control", std::string("linear"));
    if (kind == "exponential") {
      c = eh_control_default(EH_CONTROL_EXPONENTIAL);
    } else if (kind != "linear") {
      throw InputError("trajectory.control must be linear or exponential");
    }
    if (t.contains("delta")) c.delta = parse_complex(t["delta"], "trajectory.delta");
    c.amplitude = parse_number(t, "amplitude", c.amplitude);
    c.rate = parse_number(t, "rate", c.rate);
    c.sigma_max = parse_number(t, "sigma_max", c.sigma_max);
    const int samples = static_cast<int>(parse_number(t, "samples", 500));
    write("trajectory.csv", trajectory_csv(p.get(), c, samples));
    return kExitOk;
  }

  int foliation() {
    ParamsPtr p = params(kFigureK);
    foliation_files(p.get(), section("foliation"), "foliation");
    return kExitOk;
  }

  int spectrum() {
    ParamsPtr p = params(kSmallK);
    const json s = section("spectrum");
    const std::string period = s.value("period", std::string("2K"));
    eh_period tag;
    if (period == "2K") {
      tag = EH_PERIOD_2K;
    } else if (period == "2iK'") {
      tag = EH_PERIOD_2IKP;
    } else if (period == "2K+2iK'") {
      tag = EH_PERIOD_2K_2IKP;
    } else {
      throw InputError("spectrum.period must be 2K, 2iK' or 2K+2iK'");
    }
    std::vector<eh_complex> lambdas;
    if (s.contains("lambdas")) {
      if (!s["lambdas"].is_array()) throw InputError("spectrum.lambdas must be a list");
      for (const auto& v : s["lambdas"]) lambdas.push_back(parse_complex(v, "spectrum.lambdas"));
    } else {
      lambdas.push_back({400.0, 40.0});
    }
    const bool calibrate = s.value("calibrate_c0", true);
    write("spectrum.json",
          library_string(eh_spectrum_json(p.get(), tag, lambdas.data(),
                                          lambdas.size(), calibrate ? 1 : 0,
                                          &buf_),
                         "spectrum"));
    return kExitOk;
  }

  int figure() {
    const std::string& f = opts_.figure;
    if (f == "fig1") {
      ParamsPtr p = params(kFigureK);
      eh_complex K, Kp;
      check(eh_params_periods(p.get(), &K, &Kp), "eh_params_periods");
      // Two periods in each direction around the origin.
      const json l = section("landscape");
      const eh_complex ll = l.contains("lower_left")
                                ? parse_complex(l["lower_left"], "landscape.lower_left")
                                : eh_complex{-K.re - Kp.im, -Kp.re - K.im};
      const eh_complex ur = l.contains("upper_right")
                                ? parse_complex(l["upper_right"], "landscape.upper_right")
                                : eh_complex{3.0 * K.re + Kp.im, Kp.re + 3.0 * K.im};
      const int nx = static_cast<int>(parse_number(l, "nx", 241));
      const int ny = static_cast<int>(parse_number(l, "ny", 241));
      write("fig1_landscape.csv",
            library_string(eh_landscape_csv(p.get(), ll, ur, nx, ny, &buf_), "landscape"));
      write("fig1_saddles.json",
            library_string(eh_saddles_json(p.get(), &buf_), "saddles"));
    } else if (f == "fig6") {
      ParamsPtr p = params(kFigureK);
      write("fig6_saddles.json",
            library_string(eh_saddles_json(p.get(), &buf_), "saddles"));
      write("fig6_turning.json",
            library_string(eh_turning_json(p.get(), lambda(p.get(), cfg_), &buf_),
                           "turning"));
    } else if (f == "fig7" || f == "fig8") {
      ParamsPtr p = params(kFigureK);
      const eh_control c = eh_control_default(
          f == "fig7" ? EH_CONTROL_LINEAR : EH_CONTROL_EXPONENTIAL);
      write(f + "_trajectory.csv", trajectory_csv(p.get(), c, 500));
    } else if (f == "fig9") {
      ParamsPtr p = params(kFigureK);
      foliation_files(p.get(), section("foliation"), "fig9_line");
      write("fig9_contour_A.csv",
            library_string(eh_floquet_contour_csv(p.get(), EH_PERIOD_2IKP, &buf_),
                           "contour"));
    } else {
      throw InputError("figure must be one of fig1, fig6, fig7, fig8, fig9");
    }
    return kExitOk;
  }

  int verify() {
    ParamsPtr p = params(kSmallK);
    const eh_tol_profile prof =
        opts_.tol_profile == "strict" ? EH_TOL_STRICT : EH_TOL_DEFAULT;
    int passed = 0;
    const std::string doc = library_string(
        eh_verify_json(p.get(), opts_.seed, prof, &buf_, &passed), "verify");
    write("verify_report.json", doc);
    const json report = json::parse(doc);
    for (const auto& s : report["suites"]) {
      std::printf("%-22s %-7s residual %.3g (tolerance %.1g)\n",
                  s["name"].get<std::string>().c_str(),
                  s["status"].get<std::string>().c_str(),
                  s["residual"].get<double>(), s["tolerance"].get<double>());
    }
    std::cout << (passed ? "all suites passed" : "some suites FAILED") << "\n";
    return passed ? kExitOk : kExitFailure;
  }

 private:
  json section(const char* name) const {
    if (!cfg_.contains(name)) return json::object();
    if (!cfg_[name].is_object()) {
      throw InputError(std::string("field '") + name + "' must be an object");
    }
    return cfg_[name];
  }

  ParamsPtr params(eh_complex default_k) const {
    std::array<eh_complex, 4> b = default_sqrt_b();
    bool sqrt_form = true;
    eh_complex k = default_k;
    if (cfg_.contains("params")) {
      const json& pj = cfg_["params"];
      if (!pj.is_object()) throw InputError("field 'params' must be an object");
      const char* key = pj.contains("sqrt_b") ? "sqrt_b" : "b";
      if (!pj.contains(key)) throw InputError("params: missing b (or sqrt_b) field");
      sqrt_form = std::string(key) == "sqrt_b";
      const json& arr = pj[key];
      if (!arr.is_array() || arr.size() != 4) {
        throw InputError(std::string("params.") + key + " must list four couplings");
      }
      for (int i = 0; i < 4; ++i) b[i] = parse_complex(arr[i], std::string("params.") + key);
      if (pj.contains("k")) k = parse_complex(pj["k"], "params.k");
    }
    eh_params* raw = nullptr;
    const eh_status s = sqrt_form ? eh_params_create_sqrt(b.data(), k, &raw)
                                  : eh_params_create(b.data(), k, &raw);
    check(s, "eh_params_create");
    return ParamsPtr(raw);
  }

  // lambda from "lambda", else u(x*5) + "delta" (default 0.1(1+i)).
  eh_complex lambda(const eh_params* p, const json& obj) const {
    if (obj.contains("lambda")) return parse_complex(obj["lambda"], "lambda");
    eh_complex delta{0.1, 0.1};
    if (obj.contains("delta")) delta = parse_complex(obj["delta"], "delta");
    eh_complex u5;
    check(eh_saddle(p, 5, nullptr, nullptr, &u5), "eh_saddle");
    return {u5.re + delta.re, u5.im + delta.im};
  }

  std::string trajectory_csv(const eh_params* p, const eh_control& c,
                             int samples) {
    return library_string(eh_trajectory_csv(p, &c, samples, &buf_), "trajectory");
  }

  // Critical graph at theta; theta defaults to the phase of the period
  // between z2 and z3 so that the finite line joining them is traced.
  void foliation_files(const eh_params* p, const json& f,
                       const std::string& stem) {
    const json& where = f.contains("lambda") || f.contains("delta") ? f : cfg_;
    const eh_complex l = lambda(p, where);
    double theta;
    if (f.contains("theta") && f["theta"].is_number()) {
      theta = f["theta"].get<double>();
    } else if (!f.contains("theta") || f["theta"] == "critical") {
      eh_complex w;
      check(eh_wkb_period(p, l, 1, 2, &w), "eh_wkb_period");
      theta = std::atan2(w.im, w.re);
    } else {
      throw InputError("foliation.theta must be a number or \"critical\"");
    }
    eh_foliation* raw = nullptr;
    check(eh_foliation_trace(p, l, theta, parse_number(f, "launch_radius", 0.0),
                             parse_number(f, "max_length", 20.0),
                             parse_number(f, "tolerance", 1e-9), &raw),
          "eh_foliation_trace");
    FoliationPtr fol(raw);
    std::vector<std::string> names;
    for (size_t i = 0; i < eh_foliation_count(fol.get()); ++i) {
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%02zu.csv", stem.c_str(), i);
      names.push_back(name);
      char* csv = nullptr;
      check(eh_foliation_line_csv(fol.get(), i, &csv), "eh_foliation_line_csv");
      write(name, take(csv));
    }
    std::vector<const char*> cnames;
    for (const auto& n : names) cnames.push_back(n.c_str());
    char* manifest = nullptr;
    check(eh_foliation_manifest_json(fol.get(), cnames.data(), &manifest),
          "eh_foliation_manifest_json");
    write(stem + "_manifest.json", take(manifest));
  }

  std::string library_string(eh_status s, const char* what) {
    check(s, what);
    char* b = buf_;
    buf_ = nullptr;
    return take(b);
  }

  void write(const std::string& name, const std::string& text) const {
    fs::create_directories(opts_.out_dir);
    const fs::path path = fs::path(opts_.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write " + path.string());
    os << text;
    std::cout << "wrote " << path.string() << "\n";
  }

  Options opts_;
  json cfg_;
  char* buf_ = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral geometry of the four-coupling elliptic Hill potential"};
  Options opts;
  app.add_option("--config", opts.config_path, "JSON run configuration");
  app.add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", opts.seed, "seed of the randomized suites")->capture_default_str();
  app.add_option("--tol-profile", opts.tol_profile, "tolerance profile")
      ->check(CLI::IsMember({"strict", "default"}))
      ->capture_default_str();
  app.require_subcommand(1);
  auto* saddles = app.add_subcommand("saddles", "saddle table with series comparison");
  auto* turning = app.add_subcommand("turning", "turning points at one eigenvalue");
  auto* trajectory = app.add_subcommand("trajectory", "turning points along a control path");
  auto* foliation = app.add_subcommand("foliation", "critical lines of the quadratic differential");
  auto* spectrum = app.add_subcommand("spectrum", "Floquet indices by monodromy");
  auto* figure = app.add_subcommand("figure", "datasets of a figure");
  figure->add_option("name", opts.figure, "fig1, fig6, fig7, fig8 or fig9")->required();
  auto* verify = app.add_subcommand("verify", "invariant suites and round trips");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    json cfg = json::object();
    if (!opts.config_path.empty()) {
      std::ifstream is(opts.config_path);
      if (!is) throw InputError("cannot read " + opts.config_path);
      try {
        cfg = json::parse(is);
      } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
      }
      if (!cfg.is_object()) throw InputError("config must be a JSON object");
    }
    Run run(opts, cfg);
    if (*saddles) return run.saddles();
    if (*turning) return run.turning();
    if (*trajectory) return run.trajectory();
    if (*foliation) return run.foliation();
    if (*spectrum) return run.spectrum();
    if (*figure) return run.figure();
    if (*verify) return run.verify();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.status == EH_INVALID_ARGUMENT ? kExitInput : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInput;
}
