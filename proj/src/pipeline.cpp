#include "starburst/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "starburst/errors.hpp"

namespace starburst {

void validate(const Scenario& s) {
  if (s.grid_resolution < 64 || s.grid_resolution > 4096) {
    throw ValidationError("grid_resolution must be in [64, 4096], got " + std::to_string(s.grid_resolution));
  }
  if (!(s.visibility_threshold_arcmin > 0.0)) throw ValidationError("visibility_threshold_arcmin must be positive");
  if (!(s.fertility_distance > 0.0)) throw ValidationError("fertility_distance must be positive");
  if (s.wavefront.degree() > kMaxRadialOrder) throw CapabilityError("wavefront degree exceeds the supported maximum");
}

AnalysisResult analyze(const Scenario& scenario, const SolverOptions& solver) {
  validate(scenario);
  const auto t0 = std::chrono::steady_clock::now();
  AnalysisResult r;
  r.scenario = scenario;
  r.field = build_field(scenario.wavefront);
  r.critical_points = find_critical_points(r.field, solver);
  r.saddle_upper_bound = saddle_upper_bound(scenario.wavefront);
  r.max_abs_g = max_abs_g(r.field, solver);

  if (scenario.shorthand) {
    const ABParams& p = *scenario.shorthand;
    r.spherical_equivalent_d = spherical_equivalent(p.alpha, scenario.wavefront.pupil_radius());
    if (p.n < 3 || p.n > 6) {
      r.prediction_note = "closed-form regions exist for n in {3, 4, 5, 6} only";
    } else if (!(p.beta > 0.0)) {
      r.prediction_note = "closed-form regions assume beta > 0";
    } else {
      r.prediction = predict_saddles(p);
    }
  }

  const std::vector<CriticalPoint> saddles = r.critical_points.saddles();
  r.caustics = build_caustics(scenario.wavefront, r.field, r.critical_points.points, scenario.grid_resolution);
  VerdictOptions vo;
  vo.threshold_arcmin = scenario.visibility_threshold_arcmin;
  vo.azimuthal_signature = scenario.wavefront.azimuthal_signature();
  r.starburst = starburst_verdict(r.caustics, vo);
  r.fertility = fertility_report(saddles, r.caustics.pupil_contours, scenario.fertility_distance);
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

} // namespace starburst
