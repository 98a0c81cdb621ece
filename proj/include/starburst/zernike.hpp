#pragma once

#include <span>
#include <vector>

#include "starburst/polynomial.hpp"

namespace starburst {

inline constexpr int kMaxRadialOrder = 12;

/// One Zernike term c * Z_n^m with coefficient in micrometres.
///
/// Normalization is sqrt(2(n+1)/(1+delta_m0)); m >= 0 selects cos(m theta),
/// m < 0 selects sin(|m| theta). Polar angles follow (x, y) = (rho sin theta,
/// rho cos theta), so theta = 0 points along +y.
class ZernikeTerm {
public:
  /// Throws ValidationError unless |m| <= n and n - |m| is even, and
  /// CapabilityError when n exceeds kMaxRadialOrder.
  ZernikeTerm(int n, int m, double coeff);

  int n() const { return n_; }
  int m() const { return m_; }
  double coeff() const { return coeff_; }

  /// Direct polar-form evaluation, independent of the Cartesian expansion.
  double evaluate_polar(double rho, double theta) const;

private:
  int n_;
  int m_;
  double coeff_;
};

double zernike_normalization(int n, int m);

/// Exact Cartesian expansion of the term on normalized pupil coordinates.
Polynomial to_polynomial(const ZernikeTerm& term);

/// Wave aberration W as a Zernike expansion over a circular pupil.
class WaveAberration {
public:
  WaveAberration() = default;
  explicit WaveAberration(double pupil_radius_mm);
  WaveAberration(std::vector<ZernikeTerm> terms, double pupil_radius_mm);

  /// alpha Z_2^0 + beta Z_4^0 + gamma Z_n^n; zero coefficients are dropped.
  static WaveAberration from_shorthand(double alpha, double beta, double gamma, int n, double pupil_radius_mm = 3.5);

  /// Throws ValidationError if a term with the same (n, m) already exists.
  void add(const ZernikeTerm& term);

  std::span<const ZernikeTerm> terms() const { return terms_; }
  double pupil_radius() const { return pupil_radius_; }

  /// Largest radial order with a nonzero coefficient; 0 for an empty expansion.
  int degree() const;

  Polynomial polynomial() const;

  /// gcd of |m| over terms with m != 0; 0 when W is axially symmetric.
  int azimuthal_signature() const;

private:
  std::vector<ZernikeTerm> terms_;
  double pupil_radius_ = 3.5;
};

} // namespace starburst
