#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starburst/analysis.hpp"
#include "starburst/caustics.hpp"
#include "starburst/closed_form.hpp"
#include "starburst/zernike.hpp"

namespace starburst {

struct Scenario {
  std::string name = "scenario";
  WaveAberration wavefront{3.5};
  /// Set when the wavefront was given as alpha Z_2^0 + beta Z_4^0 + gamma Z_n^n.
  std::optional<ABParams> shorthand;
  int grid_resolution = kDefaultGridResolution;
  double visibility_threshold_arcmin = 1.0;
  double fertility_distance = kDefaultFertilityDistance;
  std::string output_dir = ".";
};

/// Checks ranges that the individual stages would otherwise reject late.
/// Throws ValidationError.
void validate(const Scenario& s);

struct AnalysisResult {
  Scenario scenario;
  HessianField field;
  CriticalPointSet critical_points;
  int saddle_upper_bound = 0;
  double max_abs_g = 0.0;
  std::optional<SaddlePrediction> prediction;
  std::string prediction_note; ///< why no prediction was made, if any
  std::optional<double> spherical_equivalent_d;
  CausticSet caustics;
  StarburstSummary starburst;
  std::vector<FertilityEntry> fertility;
  double elapsed_seconds = 0.0;
};

AnalysisResult analyze(const Scenario& scenario, const SolverOptions& solver = {});

} // namespace starburst
