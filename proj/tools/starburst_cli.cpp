// starburst: command-line front end.
//
//   starburst analyze  --scenario FILE | --alpha A --beta B --gamma C --n N [options]
//   starburst regions  --n N --beta B [--window G0,G1,A0,A1] [--res R] [--out DIR]
//   starburst verify   --n N --beta B --samples K --seed S
//   starburst fixtures [--grid R]
//
// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "starburst/closed_form.hpp"
#include "starburst/errors.hpp"
#include "starburst/fixtures.hpp"
#include "starburst/io.hpp"
#include "starburst/pipeline.hpp"
#include "starburst/verification.hpp"

namespace {

using namespace starburst;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct AnalyzeArgs {
  std::string scenario;
  std::optional<double> alpha, beta, gamma;
  std::optional<int> n;
  std::optional<double> pupil_radius;
  std::optional<int> grid;
  std::optional<double> threshold;
  std::optional<double> fertility;
  std::string name;
  std::string out;
  bool timing = false;
};

struct RegionsArgs {
  int n = 0;
  double beta = 0.2;
  std::string window;
  int res = 201;
  std::string out = ".";
};

struct VerifyArgs {
  int n = 0;
  double beta = 0.2;
  int samples = 0;
  std::uint64_t seed = 1;
  double band = 1e-3;
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  const bool shorthand = a.alpha || a.beta || a.gamma || a.n;
  if (a.scenario.empty() == !shorthand) {
    std::cerr << "analyze: give either --scenario or all of --alpha --beta --gamma --n\n";
    return kUsage;
  }
  Scenario s;
  if (!a.scenario.empty()) {
    s = load_scenario(a.scenario);
  } else {
    if (!(a.alpha && a.beta && a.gamma && a.n)) {
      std::cerr << "analyze: shorthand needs all of --alpha --beta --gamma --n\n";
      return kUsage;
    }
    const ABParams p{*a.alpha, *a.beta, *a.gamma, *a.n};
    s.shorthand = p;
    s.wavefront = WaveAberration::from_shorthand(p.alpha, p.beta, p.gamma, p.n, a.pupil_radius.value_or(3.5));
    s.name = "shorthand";
  }
  if (a.pupil_radius && !a.scenario.empty()) {
    const auto terms = s.wavefront.terms();
    s.wavefront = WaveAberration(std::vector<ZernikeTerm>(terms.begin(), terms.end()), *a.pupil_radius);
  }
  if (a.grid) s.grid_resolution = *a.grid;
  if (a.threshold) s.visibility_threshold_arcmin = *a.threshold;
  if (a.fertility) s.fertility_distance = *a.fertility;
  if (!a.name.empty()) s.name = a.name;
  if (!a.out.empty()) s.output_dir = a.out;
  validate(s);

  const AnalysisResult r = analyze(s);
  write_analysis_outputs(r, s.output_dir, a.timing);
  const auto& cps = r.critical_points;
  std::printf("%s: %zu cusps of Gauss, %zu saddles%s; starburst %d-fold, %d points, %s\n", s.name.c_str(),
              cps.points.size(), cps.count(PointClass::Saddle), cps.degenerate_field ? " (degenerate field)" : "",
              r.starburst.p_fold, r.starburst.point_count, to_string(r.starburst.kind));
  std::printf("outputs written to %s\n", s.output_dir.c_str());
  return kOk;
}

Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--window expects four numbers G0,G1,A0,A1");
    }
  }
  if (v.size() != 4) throw ValidationError("--window expects four numbers G0,G1,A0,A1");
  if (v[1] < v[0] || v[3] < v[2]) throw ValidationError("--window bounds must be ordered");
  return {v[0], v[1], v[2], v[3]};
}

int run_regions(const RegionsArgs& a) {
  const Window w = a.window.empty() ? default_window(a.n, a.beta) : parse_window(a.window);
  const RegionDiagram d = region_diagram(a.n, a.beta, w, a.res);
  write_region_outputs(d, a.out);
  std::printf("n=%d beta=%g: %d x %d grid, %zu boundary polylines, written to %s\n", d.n, d.beta, d.gamma_samples,
              d.alpha_samples, d.boundary_curves.size(), a.out.c_str());
  return kOk;
}

int run_verify(const VerifyArgs& a) {
  if (a.samples < 1) {
    std::cerr << "verify: --samples must be at least 1\n";
    return kUsage;
  }
  VerifyOptions o;
  o.n = a.n;
  o.beta = a.beta;
  o.samples = a.samples;
  o.seed = a.seed;
  o.boundary_band = a.band;
  const VerifyReport r = verify_closed_form(o);
  const std::string text = serialize(verify_json(r));
  std::cout << text;
  if (!a.out.empty()) {
    std::filesystem::create_directories(a.out);
    std::ofstream(std::filesystem::path(a.out) / "verify_report.json", std::ios::binary) << text;
  }
  for (const auto& f : r.failures) std::cerr << "mismatch: " << f.diagnostic << "\n";
  return r.passed() ? kOk : kFailed;
}

int run_fixtures(int grid) {
  bool all = true;
  for (const Fixture& f : published_fixtures()) {
    const FixtureOutcome o = run_fixture(f, grid);
    std::printf("%-6s %s  cusps %2d  saddles %d  fertile %d  %d-fold  %d points  %-19s  %.2fs%s%s\n", o.name.c_str(),
                o.passed ? "PASS" : "FAIL", o.cusps, o.saddles, o.fertile, o.p_fold, o.points, to_string(o.kind), o.seconds,
                o.passed ? "" : "  ", o.diagnostic.c_str());
    all = all && o.passed;
  }
  return all ? kOk : kFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle cusps of Gauss, retina caustics and starburst prediction for Zernike wave aberrations"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the full pipeline on one wavefront");
  analyze_cmd->add_option("--scenario", aa.scenario, "Scenario JSON file");
  analyze_cmd->add_option("--alpha", aa.alpha, "Z_2^0 coefficient (um)");
  analyze_cmd->add_option("--beta", aa.beta, "Z_4^0 coefficient (um)");
  analyze_cmd->add_option("--gamma", aa.gamma, "Z_n^n coefficient (um)");
  analyze_cmd->add_option("--n", aa.n, "Order of the Z_n^n term");
  analyze_cmd->add_option("--pupil-radius", aa.pupil_radius, "Pupil radius (mm), default 3.5");
  analyze_cmd->add_option("--grid", aa.grid, "Contour grid resolution, 64..4096 (default 512)");
  analyze_cmd->add_option("--threshold", aa.threshold, "Visibility threshold (arcmin), default 1");
  analyze_cmd->add_option("--fertility-distance", aa.fertility, "Fertility distance (normalized pupil units)");
  analyze_cmd->add_option("--name", aa.name, "Scenario name used in outputs");
  analyze_cmd->add_option("--out", aa.out, "Output directory");
  analyze_cmd->add_flag("--timing", aa.timing, "Include wall-clock timing in report.json");

  RegionsArgs ra;
  auto* regions_cmd = app.add_subcommand("regions", "Emit the closed-form region diagram");
  regions_cmd->add_option("--n", ra.n, "Order n in {3, 4, 5, 6}")->required();
  regions_cmd->add_option("--beta", ra.beta, "Z_4^0 coefficient (um), > 0")->required();
  regions_cmd->add_option("--window", ra.window, "G0,G1,A0,A1 in um (default: published window)");
  regions_cmd->add_option("--res", ra.res, "Samples per axis (>= 2)");
  regions_cmd->add_option("--out", ra.out, "Output directory");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Compare closed-form predictions with the numerical census");
  verify_cmd->add_option("--n", va.n, "Order n in {3, 4, 5, 6}")->required();
  verify_cmd->add_option("--beta", va.beta, "Z_4^0 coefficient (um), > 0")->required();
  verify_cmd->add_option("--samples", va.samples, "Number of random samples")->required();
  verify_cmd->add_option("--seed", va.seed, "RNG seed")->required();
  verify_cmd->add_option("--band", va.band, "Boundary band half-width in units of beta");
  verify_cmd->add_option("--out", va.out, "Directory for verify_report.json");

  int fixture_grid = kDefaultGridResolution;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Check the five published archetypal wavefronts");
  fixtures_cmd->add_option("--grid", fixture_grid, "Contour grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) return run_analyze(aa);
    if (*regions_cmd) return run_regions(ra);
    if (*verify_cmd) return run_verify(va);
    if (*fixtures_cmd) return run_fixtures(fixture_grid);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
