#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "starburst/analysis.hpp"
#include "starburst/zernike.hpp"

namespace starburst {

/// Milliradians to arcminutes.
inline constexpr double kArcminPerMilliradian = 10800.0 / (1000.0 * std::numbers::pi);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Polyline {
  std::vector<Point2> points;
  bool closed = false; ///< last point connects back to the first
};

/// Zero set of G inside the closed unit disk.
struct ContourSet {
  std::vector<Polyline> polylines;
  int grid_resolution = 0;
  bool degenerate = false; ///< G vanishes identically
};

inline constexpr int kDefaultGridResolution = 512;

/// Marching squares on a (resolution + 1)^2 node grid over [-1, 1]^2, clipped
/// to the unit disk. Throws ValidationError unless 64 <= resolution <= 4096.
ContourSet extract_contours(const HessianField& field, int resolution = kDefaultGridResolution);

/// Ray image on the retina in arcmin: xi = -W_x / Rp, eta = -W_y / Rp (in mrad)
/// with W in micrometres, derivatives in normalized pupil units and Rp in mm.
Point2 map_to_retina(Point2 pupil, const HessianField& field, double pupil_radius_mm);
std::vector<Point2> map_to_retina(std::span<const Point2> pupil, const WaveAberration& wavefront);

struct ProjectedCusp {
  CriticalPoint source;
  Point2 retina;
};

/// Cusp of the mapped caustic: a contour point where the contour tangent lies
/// in the kernel of Hess W.
struct CausticCusp {
  Point2 pupil;
  Point2 retina;
};

struct CausticSet {
  ContourSet pupil_contours;
  std::vector<Polyline> retina_curves; ///< one per pupil polyline, same vertex count
  std::vector<ProjectedCusp> projected_cusps;
  std::vector<CausticCusp> caustic_cusps;
  double pupil_radius_mm = 0.0;

  bool empty() const;
  std::size_t vertex_count() const;
};

CausticSet build_caustics(const WaveAberration& wavefront, const HessianField& field,
                          std::span<const CriticalPoint> critical_points,
                          int resolution = kDefaultGridResolution);

std::vector<CausticCusp> find_caustic_cusps(const ContourSet& contours, const HessianField& field,
                                            double pupil_radius_mm);

struct SymmetryResult {
  int p = 1;
  double residual = 0.0; ///< Hausdorff distance / diameter for the returned p
  double diameter = 0.0;
};

/// Symmetric point-to-segment Hausdorff distance between the retina curves and
/// their rotation by 2 pi / p about the retina origin, divided by the vertex
/// cloud diameter.
double rotation_residual(const CausticSet& caustics, int p);

/// Largest p in 2..12 whose rotation residual is below tolerance, else 1.
/// Throws std::invalid_argument on empty caustics.
SymmetryResult symmetry_order(const CausticSet& caustics, double tolerance = 1e-3);

enum class StarburstKind { EquallyDistanced, NonEquallyDistanced, None };
const char* to_string(StarburstKind k);

struct SpikeTip {
  double radius_arcmin = 0.0;
  double angle = 0.0; ///< radians, measured from +eta towards +xi
  bool long_tip = true;
};

struct VerdictOptions {
  double threshold_arcmin = 1.0;
  double median_factor = 1.5;
  int angular_bins = 360;
  /// Short tips must reach this fraction of the longest tip.
  double short_tip_ratio = 0.3;
  /// Tips within this angle (radians) of a longer tip are merged into it.
  double merge_angle = 5.0 * std::numbers::pi / 180.0;
  /// Relative spread allowed among radii of one tip class.
  double radius_tolerance = 0.05;
  double symmetry_tolerance = 1e-3;
  /// Used for p_fold when the caustics are empty.
  int azimuthal_signature = 0;
};

struct StarburstSummary {
  int p_fold = 0;
  int point_count = 0;
  StarburstKind kind = StarburstKind::None;
  std::vector<SpikeTip> spike_tips;
  double visibility_threshold = 1.0;
  double symmetry_residual = 0.0;
  double median_extent = 0.0;
  std::string basis = "model prediction under Hypothesis 1";
};

StarburstSummary starburst_verdict(const CausticSet& caustics, const VerdictOptions& opts = {});

struct FertilityEntry {
  CriticalPoint saddle;
  bool fertile = false;
  int branches = 0;              ///< contour branches within the distance
  double nearest_distance = 0.0; ///< to the closest contour vertex
};

inline constexpr double kDefaultFertilityDistance = 0.12;

/// A saddle is fertile when at least two contour branches pass within distance.
std::vector<FertilityEntry> fertility_report(std::span<const CriticalPoint> saddles, const ContourSet& contours,
                                             double distance = kDefaultFertilityDistance);

} // namespace starburst
