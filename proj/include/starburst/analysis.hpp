#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "starburst/polynomial.hpp"
#include "starburst/zernike.hpp"

namespace starburst {

/// W, its first and second partials, G = det Hess W and the partials of G up
/// to second order, all as exact polynomials on normalized pupil coordinates.
struct HessianField {
  Polynomial w, wx, wy, wxx, wxy, wyy;
  Polynomial g, gx, gy, gxx, gxy, gyy;

  /// Throws CapabilityError when deg(W) exceeds kMaxRadialOrder.
  static HessianField build(const WaveAberration& wavefront);
  static HessianField from_polynomial(const Polynomial& w);
};

inline HessianField build_field(const WaveAberration& wavefront) { return HessianField::build(wavefront); }

enum class PointClass { Saddle, Extremum, Degenerate };

const char* to_string(PointClass c);

/// A cusp of Gauss: a critical point of G.
struct CriticalPoint {
  double x = 0.0;
  double y = 0.0;
  double rho = 0.0;
  double theta = 0.0; ///< radians in [0, 2 pi), measured from +y towards +x
  PointClass kind = PointClass::Degenerate;
  double g_value = 0.0;
  double hess_g_det = 0.0;
  double gradient_norm = 0.0;
  bool on_boundary = false; ///< clamped onto rho = 1
};

struct SolverOptions {
  int seed_grid = 64;
  int max_iterations = 100;
  /// Seed cells flagged by the coarse pass are split this many times (quadtree).
  int refine_levels = 6;
  double gradient_tolerance = 1e-10;
  double dedup_radius = 1e-6;
  /// |det Hess G| below factor * (max |G|)^2 / R^4 is treated as degenerate.
  double degeneracy_factor = 1e-9;
  double boundary_slack = 1e-9;
  std::size_t max_isolated_points = 50;
  /// Search disk radius; rescaled fields live on a dilated pupil.
  double domain_radius = 1.0;
};

struct CriticalPointSet {
  std::vector<CriticalPoint> points; ///< ordered by rho, then theta
  bool degenerate_field = false;
  std::string degenerate_reason;
  double degeneracy_threshold = 0.0;
  std::size_t seeds = 0;
  std::size_t failed_seeds = 0;

  std::size_t count(PointClass c) const;
  std::vector<CriticalPoint> saddles() const;
};

CriticalPointSet find_critical_points(const HessianField& field, const SolverOptions& opts = {});

/// Max |G| sampled on the seed grid restricted to the search disk.
double max_abs_g(const HessianField& field, const SolverOptions& opts = {});

PointClass classify(double x, double y, const HessianField& field, double degeneracy_threshold);

/// (d - 2)(2d - 5) for d = deg W; 0 when d < 3.
int saddle_upper_bound(int degree);
int saddle_upper_bound(const WaveAberration& wavefront);

struct RescaleReport {
  double factor = 1.0;
  bool passed = false;
  bool vacuous = false; ///< both fields degenerate
  std::size_t original_count = 0;
  std::size_t scaled_count = 0;
  double max_position_error = 0.0; ///< in normalized coordinates of the original pupil
  std::string diagnostic;
};

/// Checks that the critical points of W(x/r, y/r) on the r-dilated disk are the
/// r-scaled critical points of W, with identical classes.
RescaleReport rescale_check(const WaveAberration& wavefront, double factor, const SolverOptions& opts = {});

} // namespace starburst
