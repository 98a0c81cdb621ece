#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starburst/analysis.hpp"
#include "starburst/closed_form.hpp"

namespace starburst {

/// Numerical saddle census of W = alpha Z_2^0 + beta Z_4^0 + gamma Z_n^n,
/// grouped by angular family.
struct SaddleCensus {
  int total = 0;
  int even = 0;
  int odd = 0;
  int unassigned = 0;        ///< saddles off both angle lattices
  double max_angle_error = 0.0; ///< distance to the nearest lattice angle
  double ring_spread = 0.0;     ///< largest radius spread within one family
  bool lattice_complete = true; ///< each family with saddles hits every lattice angle once
  bool degenerate_field = false;
  std::vector<CriticalPoint> saddles;
};

SaddleCensus saddle_census(const ABParams& p, const SolverOptions& opts = {});

struct SampleOutcome {
  ABParams params;
  SaddlePrediction prediction;
  SaddleCensus census;
  double radius_error = 0.0;
  bool agree = false;
  std::string diagnostic;
};

/// Compares predict_saddles against the numerical census at one parameter point.
SampleOutcome compare_sample(const ABParams& p, const SolverOptions& opts = {});

struct VerifyOptions {
  int n = 4;
  double beta = 0.2;
  int samples = 100;
  std::uint64_t seed = 1;
  /// Samples closer than band * beta to any boundary curve are redrawn.
  double boundary_band = 1e-3;
  std::optional<Window> window; ///< defaults to default_window(n, beta)
  SolverOptions solver;
};

struct VerifyReport {
  int n = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  Window window;
  int samples = 0;
  int agreed = 0;
  int redrawn = 0;
  int with_saddles = 0;
  double max_radius_error = 0.0;
  double max_angle_error = 0.0;
  double max_ring_spread = 0.0;
  std::vector<SampleOutcome> failures;

  bool passed() const { return agreed == samples; }
};

/// Random (alpha, gamma) draws in the window; deterministic for a fixed seed.
/// Throws ValidationError when samples < 1.
VerifyReport verify_closed_form(const VerifyOptions& opts);

} // namespace starburst
