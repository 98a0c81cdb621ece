#include "starburst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "starburst/errors.hpp"
#include "starburst/svg.hpp"

namespace starburst {
namespace {

using nlohmann::json;

constexpr double kDegrees = 180.0 / std::numbers::pi;

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing \"" + key + "\"");
  if (!it->is_number()) throw ValidationError(where + ": \"" + key + "\" must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ValidationError(where + ": \"" + key + "\" must be finite");
  return v;
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing \"" + key + "\"");
  if (!it->is_number_integer()) throw ValidationError(where + ": \"" + key + "\" must be an integer");
  return it->get<int>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ValidationError(where + ": unknown key \"" + key + "\"");
  }
}

json point_json(Point2 p) { return json::array({num(p.x), num(p.y)}); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

} // namespace

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::stod(buf);
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
  reject_unknown(doc,
                 {"name", "terms", "shorthand", "pupil_radius_mm", "grid_resolution", "visibility_threshold_arcmin",
                  "fertility_distance", "output_dir"},
                 "scenario");

  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ValidationError("scenario: \"name\" must be a string");
    s.name = doc["name"].get<std::string>();
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ValidationError("scenario: \"output_dir\" must be a string");
    s.output_dir = doc["output_dir"].get<std::string>();
  }
  const double rp = doc.contains("pupil_radius_mm") ? require_number(doc, "pupil_radius_mm", "scenario") : 3.5;
  if (doc.contains("grid_resolution")) s.grid_resolution = require_int(doc, "grid_resolution", "scenario");
  if (doc.contains("visibility_threshold_arcmin")) {
    s.visibility_threshold_arcmin = require_number(doc, "visibility_threshold_arcmin", "scenario");
  }
  if (doc.contains("fertility_distance")) s.fertility_distance = require_number(doc, "fertility_distance", "scenario");

  const bool has_terms = doc.contains("terms");
  const bool has_shorthand = doc.contains("shorthand");
  if (has_terms == has_shorthand) {
    throw ValidationError("scenario: give exactly one of \"terms\" or \"shorthand\"");
  }
  if (has_terms) {
    const json& terms = doc["terms"];
    if (!terms.is_array()) throw ValidationError("scenario: \"terms\" must be a list");
    s.wavefront = WaveAberration(rp);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string where = "terms[" + std::to_string(k) + "]";
      if (!terms[k].is_object()) throw ValidationError(where + " must be an object");
      reject_unknown(terms[k], {"n", "m", "coeff_um"}, where);
      s.wavefront.add(ZernikeTerm(require_int(terms[k], "n", where), require_int(terms[k], "m", where),
                                  require_number(terms[k], "coeff_um", where)));
    }
  } else {
    const json& sh = doc["shorthand"];
    if (!sh.is_object()) throw ValidationError("scenario: \"shorthand\" must be an object");
    reject_unknown(sh, {"alpha", "beta", "gamma", "n"}, "shorthand");
    ABParams p;
    p.alpha = require_number(sh, "alpha", "shorthand");
    p.beta = require_number(sh, "beta", "shorthand");
    p.gamma = require_number(sh, "gamma", "shorthand");
    p.n = require_int(sh, "n", "shorthand");
    if (p.n < 1 || p.n > kMaxRadialOrder) throw ValidationError("shorthand: n must be in [1, 12]");
    s.shorthand = p;
    s.wavefront = WaveAberration::from_shorthand(p.alpha, p.beta, p.gamma, p.n, rp);
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot read scenario file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize(const json& j) { return j.dump(2) + "\n"; }

json report_json(const AnalysisResult& r, bool include_timing) {
  json doc;
  const Scenario& s = r.scenario;

  json scenario{{"name", s.name},
                {"pupil_radius_mm", num(s.wavefront.pupil_radius())},
                {"grid_resolution", s.grid_resolution},
                {"visibility_threshold_arcmin", num(s.visibility_threshold_arcmin)},
                {"fertility_distance", num(s.fertility_distance)}};
  json terms = json::array();
  for (const auto& t : s.wavefront.terms()) terms.push_back({{"n", t.n()}, {"m", t.m()}, {"coeff_um", num(t.coeff())}});
  scenario["terms"] = terms;
  if (s.shorthand) {
    scenario["shorthand"] = {{"alpha", num(s.shorthand->alpha)},
                             {"beta", num(s.shorthand->beta)},
                             {"gamma", num(s.shorthand->gamma)},
                             {"n", s.shorthand->n}};
  }
  doc["scenario"] = scenario;

  doc["field"] = {{"w_degree", s.wavefront.degree()},
                  {"g_degree", r.field.g.degree()},
                  {"azimuthal_signature", s.wavefront.azimuthal_signature()},
                  {"saddle_upper_bound", r.saddle_upper_bound},
                  {"max_abs_g", num(r.max_abs_g)},
                  {"degeneracy_threshold", num(r.critical_points.degeneracy_threshold)}};

  const CriticalPointSet& cps = r.critical_points;
  json points = json::array();
  for (std::size_t k = 0; k < cps.points.size(); ++k) {
    const auto& p = cps.points[k];
    const Point2 retina = r.caustics.projected_cusps.size() > k ? r.caustics.projected_cusps[k].retina : Point2{};
    points.push_back({{"x", num(p.x)},
                      {"y", num(p.y)},
                      {"rho", num(p.rho)},
                      {"theta_deg", num(p.theta * kDegrees)},
                      {"class", to_string(p.kind)},
                      {"g_value", num(p.g_value)},
                      {"hess_g_det", num(p.hess_g_det)},
                      {"gradient_norm", num(p.gradient_norm)},
                      {"on_boundary", p.on_boundary},
                      {"retina_arcmin", point_json(retina)}});
  }
  doc["critical_points"] = {{"count", cps.points.size()},
                            {"saddles", cps.count(PointClass::Saddle)},
                            {"extrema", cps.count(PointClass::Extremum)},
                            {"degenerate", cps.count(PointClass::Degenerate)},
                            {"degenerate_field", cps.degenerate_field},
                            {"degenerate_reason", cps.degenerate_reason},
                            {"seeds", cps.seeds},
                            {"failed_seeds", cps.failed_seeds},
                            {"points", points}};

  if (r.prediction) {
    const SaddlePrediction& pr = *r.prediction;
    json rings = json::array();
    for (const auto& ring : pr.rings) {
      json angles = json::array();
      for (double t : ring.thetas) angles.push_back(num(t * kDegrees));
      rings.push_back({{"rho", num(ring.rho)}, {"family", to_string(ring.family)}, {"theta_deg", angles}});
    }
    doc["saddle_prediction"] = {{"count", pr.count},
                                {"rings", rings},
                                {"region_label", pr.region_label},
                                {"boundary", pr.boundary},
                                {"non_generic", pr.non_generic},
                                {"rings_consistent", pr.rings_consistent}};
  } else if (!r.prediction_note.empty()) {
    doc["saddle_prediction"] = {{"note", r.prediction_note}};
  }
  if (r.spherical_equivalent_d) doc["spherical_equivalent_d"] = num(*r.spherical_equivalent_d);

  json cusps = json::array();
  for (const auto& c : r.caustics.caustic_cusps) cusps.push_back({{"pupil", point_json(c.pupil)}, {"retina_arcmin", point_json(c.retina)}});
  doc["caustics"] = {{"polylines", r.caustics.pupil_contours.polylines.size()},
                     {"vertices", r.caustics.vertex_count()},
                     {"degenerate", r.caustics.pupil_contours.degenerate},
                     {"caustic_cusps", cusps}};

  const StarburstSummary& sb = r.starburst;
  json tips = json::array();
  for (const auto& t : sb.spike_tips) {
    tips.push_back({{"radius_arcmin", num(t.radius_arcmin)}, {"angle_deg", num(t.angle * kDegrees)}, {"long", t.long_tip}});
  }
  doc["starburst"] = {{"p_fold", sb.p_fold},
                      {"point_count", sb.point_count},
                      {"kind", to_string(sb.kind)},
                      {"spike_tips", tips},
                      {"visibility_threshold_arcmin", num(sb.visibility_threshold)},
                      {"symmetry_residual", num(sb.symmetry_residual)},
                      {"median_extent_arcmin", num(sb.median_extent)},
                      {"basis", sb.basis}};

  json fertility = json::array();
  for (const auto& e : r.fertility) {
    fertility.push_back({{"rho", num(e.saddle.rho)},
                         {"theta_deg", num(e.saddle.theta * kDegrees)},
                         {"fertile", e.fertile},
                         {"branches", e.branches},
                         {"nearest_contour_distance", num(e.nearest_distance)}});
  }
  doc["fertility"] = fertility;
  doc["versions"] = {{"starburst", kVersion}, {"report_schema", kReportSchema}};
  if (include_timing) doc["timing"] = {{"analysis_seconds", num(r.elapsed_seconds)}};
  return doc;
}

json verify_json(const VerifyReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"alpha", num(f.params.alpha)},
                        {"gamma", num(f.params.gamma)},
                        {"predicted", f.prediction.count},
                        {"numerical", f.census.total},
                        {"diagnostic", f.diagnostic}});
  }
  return {{"n", r.n},
          {"beta", num(r.beta)},
          {"seed", r.seed},
          {"window", {{"gamma", {num(r.window.gamma_lo), num(r.window.gamma_hi)}},
                      {"alpha", {num(r.window.alpha_lo), num(r.window.alpha_hi)}}}},
          {"samples", r.samples},
          {"agreed", r.agreed},
          {"failed", r.samples - r.agreed},
          {"redrawn_in_boundary_band", r.redrawn},
          {"samples_with_saddles", r.with_saddles},
          {"max_radius_deviation", num(r.max_radius_error)},
          {"max_angle_deviation", num(r.max_angle_error)},
          {"passed", r.passed()},
          {"failures", failures}};
}

json region_json(const RegionDiagram& d) {
  json curves = json::array();
  for (const auto& c : d.boundary_curves) curves.push_back({{"name", c.name}, {"points", c.points.size()}});
  return {{"n", d.n},
          {"beta", num(d.beta)},
          {"gamma_samples", d.gamma_samples},
          {"alpha_samples", d.alpha_samples},
          {"boundary_curves", curves}};
}

void write_contours_csv(std::ostream& os, const CausticSet& c, bool retina) {
  os << (retina ? "polyline,vertex,xi_arcmin,eta_arcmin,closed\n" : "polyline,vertex,x,y,closed\n");
  const auto& lines = retina ? c.retina_curves : c.pupil_contours.polylines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = 0; k < lines[i].points.size(); ++k) {
      os << i << ',' << k << ',' << fmt(lines[i].points[k].x) << ',' << fmt(lines[i].points[k].y) << ','
         << (lines[i].closed ? 1 : 0) << '\n';
    }
  }
}

void write_critical_points_csv(std::ostream& os, const AnalysisResult& r) {
  os << "index,x,y,rho,theta_deg,class,g_value,hess_g_det,on_boundary,xi_arcmin,eta_arcmin,fertile\n";
  const auto& pts = r.critical_points.points;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const Point2 retina = r.caustics.projected_cusps.size() > k ? r.caustics.projected_cusps[k].retina : Point2{};
    std::string fertile;
    for (const auto& e : r.fertility) {
      if (e.saddle.x == p.x && e.saddle.y == p.y) fertile = e.fertile ? "1" : "0";
    }
    os << k << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.rho) << ',' << fmt(p.theta * kDegrees) << ','
       << to_string(p.kind) << ',' << fmt(p.g_value) << ',' << fmt(p.hess_g_det) << ',' << (p.on_boundary ? 1 : 0) << ','
       << fmt(retina.x) << ',' << fmt(retina.y) << ',' << fertile << '\n';
  }
}

void write_regions_csv(std::ostream& os, const RegionDiagram& d) {
  os << "gamma,alpha,count,family,boundary\n";
  for (const auto& c : d.grid) {
    os << fmt(c.gamma) << ',' << fmt(c.alpha) << ',' << c.count << ',' << to_string(c.presence) << ','
       << (c.boundary ? 1 : 0) << '\n';
  }
}

void write_analysis_outputs(const AnalysisResult& r, const std::filesystem::path& dir, bool include_timing) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", serialize(report_json(r, include_timing)));
  std::ostringstream pupil;
  write_contours_csv(pupil, r.caustics, false);
  write_file(dir / "contours_pupil.csv", pupil.str());
  std::ostringstream retina;
  write_contours_csv(retina, r.caustics, true);
  write_file(dir / "contours_retina.csv", retina.str());
  std::ostringstream points;
  write_critical_points_csv(points, r);
  write_file(dir / "critical_points.csv", points.str());
  write_file(dir / "wavefront.svg", wavefront_svg(r));
  write_file(dir / "g_map.svg", g_map_svg(r, 0.0));
  write_file(dir / "g_map_clipped.svg", g_map_svg(r, 0.02));
  write_file(dir / "retina.svg", retina_svg(r));
}

void write_region_outputs(const RegionDiagram& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream grid;
  write_regions_csv(grid, d);
  write_file(dir / "regions_grid.csv", grid.str());
  write_file(dir / "regions.svg", regions_svg(d));
}

} // namespace starburst
