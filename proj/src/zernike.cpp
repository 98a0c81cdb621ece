#include "starburst/zernike.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "starburst/errors.hpp"

namespace starburst {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Coefficient of rho^(n - 2s) in the radial polynomial R_n^k.
double radial_coefficient(int n, int k, int s) {
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  return sign * factorial(n - s) / (factorial(s) * factorial((n + k) / 2 - s) * factorial((n - k) / 2 - s));
}

// (x^2 + y^2)^p
Polynomial radius_squared_power(int p) {
  Polynomial out;
  for (int a = 0; a <= p; ++a) out.set_coefficient(2 * a, 2 * (p - a), binomial(p, a));
  return out;
}

// Re or Im of (y + i x)^k, i.e. rho^k cos(k theta) or rho^k sin(k theta).
Polynomial angular_part(int k, bool sine) {
  Polynomial out;
  for (int j = 0; j <= k; ++j) {
    // term C(k, j) y^(k-j) (i x)^j; i^j is real for even j, imaginary for odd j.
    const bool imaginary = (j % 2 == 1);
    if (imaginary != sine) continue;
    const int quarter = imaginary ? (j - 1) / 2 : j / 2;
    const double sign = (quarter % 2 == 0) ? 1.0 : -1.0;
    out.set_coefficient(j, k - j, sign * binomial(k, j));
  }
  return out;
}

} // namespace

ZernikeTerm::ZernikeTerm(int n, int m, double coeff) : n_(n), m_(m), coeff_(coeff) {
  if (n < 0 || std::abs(m) > n || (n - std::abs(m)) % 2 != 0) {
    throw ValidationError("invalid Zernike indices (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                          "): need |m| <= n and n - |m| even");
  }
  if (n > kMaxRadialOrder) {
    throw CapabilityError("radial order " + std::to_string(n) + " exceeds the supported maximum of " +
                          std::to_string(kMaxRadialOrder));
  }
}

double zernike_normalization(int n, int m) { return std::sqrt(2.0 * (n + 1) / (m == 0 ? 2.0 : 1.0)); }

double ZernikeTerm::evaluate_polar(double rho, double theta) const {
  const int k = std::abs(m_);
  double radial = 0.0;
  for (int s = 0; s <= (n_ - k) / 2; ++s) radial += radial_coefficient(n_, k, s) * std::pow(rho, n_ - 2 * s);
  const double angular = m_ >= 0 ? std::cos(k * theta) : std::sin(k * theta);
  return coeff_ * zernike_normalization(n_, m_) * radial * angular;
}

Polynomial to_polynomial(const ZernikeTerm& term) {
  const int n = term.n();
  const int k = std::abs(term.m());
  Polynomial radial;
  for (int s = 0; s <= (n - k) / 2; ++s) {
    radial += radius_squared_power((n - k) / 2 - s) * radial_coefficient(n, k, s);
  }
  return radial * angular_part(k, term.m() < 0) * (term.coeff() * zernike_normalization(n, term.m()));
}

WaveAberration::WaveAberration(double pupil_radius_mm) : pupil_radius_(pupil_radius_mm) {
  if (!(pupil_radius_mm > 0.0)) throw ValidationError("pupil radius must be positive");
}

WaveAberration::WaveAberration(std::vector<ZernikeTerm> terms, double pupil_radius_mm)
    : WaveAberration(pupil_radius_mm) {
  for (const auto& t : terms) add(t);
}

WaveAberration WaveAberration::from_shorthand(double alpha, double beta, double gamma, int n,
                                              double pupil_radius_mm) {
  WaveAberration w(pupil_radius_mm);
  if (alpha != 0.0) w.add(ZernikeTerm(2, 0, alpha));
  if (beta != 0.0) w.add(ZernikeTerm(4, 0, beta));
  if (gamma != 0.0) w.add(ZernikeTerm(n, n, gamma));
  return w;
}

void WaveAberration::add(const ZernikeTerm& term) {
  for (const auto& t : terms_) {
    if (t.n() == term.n() && t.m() == term.m()) {
      throw ValidationError("duplicate Zernike term (n=" + std::to_string(term.n()) +
                            ", m=" + std::to_string(term.m()) + ")");
    }
  }
  terms_.push_back(term);
}

int WaveAberration::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    if (t.coeff() != 0.0) d = std::max(d, t.n());
  }
  return d;
}

Polynomial WaveAberration::polynomial() const {
  Polynomial w;
  for (const auto& t : terms_) w += to_polynomial(t);
  return w;
}

int WaveAberration::azimuthal_signature() const {
  int g = 0;
  for (const auto& t : terms_) {
    if (t.m() != 0 && t.coeff() != 0.0) g = std::gcd(g, std::abs(t.m()));
  }
  return g;
}

} // namespace starburst
