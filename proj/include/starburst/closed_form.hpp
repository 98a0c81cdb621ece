#pragma once

#include <span>
#include <string>
#include <vector>

namespace starburst {

/// W = alpha Z_2^0 + beta Z_4^0 + gamma Z_n^n, coefficients in micrometres.
struct ABParams {
  double alpha = 0.0;
  double beta = 0.2;
  double gamma = 0.0;
  int n = 3;
};

/// Angular family of a ring of critical points.
///   Even: theta = 2k pi / n,      radius solves A - B = 0
///   Odd:  theta = (2k + 1) pi / n, radius solves A + B = 0
enum class Family { Even, Odd };

const char* to_string(Family f);
std::vector<double> family_angles(Family f, int n);

/// A(rho) and B(rho) with the radial equations G_rho = 4 rho (A - s B) and
/// G_theta = 4 rho^2 B sin(n theta), s = cos(n theta).
class ABFunctions {
public:
  /// Throws CapabilityError unless n is in {3, 4, 5, 6}.
  explicit ABFunctions(const ABParams& p);

  double a(double rho) const;
  double b(double rho) const;
  double a_prime(double rho) const;
  double b_prime(double rho) const;

  /// A - B for the even family, A + B for the odd family.
  double combined(Family f, double rho) const;
  double combined_prime(Family f, double rho) const;

  /// Coefficients of combined(f, .) in ascending powers of rho.
  std::vector<double> combined_coefficients(Family f) const;

  const ABParams& params() const { return p_; }

private:
  ABParams p_;
  double a0_;    // 192 beta (sqrt15 alpha - 15 beta)
  double a2_;    // 8640 beta^2
  double ag_;    // gamma^2 (n-2)(n-1)^2 n^2 (n+1), coefficient of -rho^(2n-6)
  double bcoef_; // 12 sqrt10 beta gamma (n-1) n^2 sqrt(n+1)
};

ABFunctions ab_functions(const ABParams& p);

/// Sign test for a root of A -/+ B: det Hess G = 16 n s B (A - s B)' there.
bool is_saddle_root(const ABFunctions& ab, Family f, double rho);

struct FamilyRoot {
  double rho = 0.0;
  Family family = Family::Even;
  bool saddle = false;
};

struct SaddleRadii {
  std::vector<FamilyRoot> even;
  std::vector<FamilyRoot> odd;
  bool non_generic = false; ///< gamma == 0: both families collapse onto circles

  std::span<const FamilyRoot> of(Family f) const { return f == Family::Even ? even : odd; }
};

/// Real roots in (0, 1) of A -/+ B. n = 3, 4 use the explicit radicals;
/// n = 5 (quartic in rho) and n = 6 (cubic in rho^2) use companion-matrix
/// eigenvalues polished by Newton. Throws ValidationError for beta <= 0.
SaddleRadii saddle_radii(const ABParams& p);

/// Companion-matrix roots in (0, 1) of A -/+ B for any supported n.
std::vector<double> companion_radii(const ABParams& p, Family f);

/// Real roots of sum c_k t^k from the eigenvalues of its companion matrix.
std::vector<double> real_polynomial_roots(std::span<const double> ascending, double imag_tolerance = 1e-10);

struct Ring {
  double rho = 0.0;
  Family family = Family::Even;
  std::vector<double> thetas;
};

struct SaddlePrediction {
  int n = 0;
  int count = 0; ///< 0, n or 2n
  bool even_present = false;
  bool odd_present = false;
  std::vector<Ring> rings;
  std::string region_label;
  bool boundary = false;         ///< some inequality holds with equality to 1e-12
  bool non_generic = false;      ///< gamma == 0
  bool rings_consistent = true;  ///< one saddle root per predicted family
};

/// Evaluates the region table for n. Throws CapabilityError for unsupported n
/// and ValidationError for beta <= 0.
SaddlePrediction predict_saddles(const ABParams& p);

/// Closed-form boundary parameters at (beta, gamma).
struct RegionParameters {
  double alpha1_plus = 0.0;
  double alpha1_minus = 0.0;
  double alpha2 = 0.0;       // n = 3
  double alpha3 = 0.0;       // n = 3
  double alpha2_plus = 0.0;  // n = 5, 6
  double alpha2_minus = 0.0; // n = 5, 6
  double gamma1_plus = 0.0;  // n = 5, 6
  double gamma1_minus = 0.0; // n = 5, 6
};

RegionParameters region_parameters(int n, double beta, double gamma);

struct Window {
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
};

/// Plot window of the published region figure for n, scaled by beta.
Window default_window(int n, double beta);

/// Smallest distance, in units of beta, from (gamma, alpha) to any curve or
/// vertical line that appears in the region table for n.
double boundary_distance(int n, double beta, double alpha, double gamma);

struct DiagramPoint {
  double gamma = 0.0;
  double alpha = 0.0;
};

struct NamedPolyline {
  std::string name;
  std::vector<DiagramPoint> points;
};

struct Tick {
  enum class Axis { Gamma, Alpha } axis = Axis::Gamma;
  double value = 0.0;
  std::string label;
};

enum class FamilyPresence { None, Even, Odd, Both };
const char* to_string(FamilyPresence f);

struct RegionCell {
  double gamma = 0.0;
  double alpha = 0.0;
  int count = 0;
  FamilyPresence presence = FamilyPresence::None;
  bool boundary = false;
};

struct RegionDiagram {
  int n = 0;
  double beta = 0.0;
  Window window;
  std::vector<NamedPolyline> boundary_curves;
  std::vector<Tick> ticks;
  int gamma_samples = 0;
  int alpha_samples = 0;
  std::vector<RegionCell> grid; ///< row-major, alpha outer, gamma inner
};

/// resolution is the number of samples per axis; a degenerate axis gets one sample.
RegionDiagram region_diagram(int n, double beta, const Window& window, int resolution);

struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

/// Hull of {gamma : predict_saddles(alpha, beta, gamma, n).count > 0}.
GammaInterval admissible_gamma_interval(int n, double beta, double alpha);

/// M = 4 sqrt(3) alpha / Rp^2 in diopters (alpha in um, Rp in mm).
double spherical_equivalent(double alpha, double pupil_radius_mm);

} // namespace starburst
