#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace starburst {

enum class Axis { X, Y };

/// Real bivariate polynomial sum c_ij x^i y^j in the monomial basis.
///
/// Coefficients are stored densely in a triangular layout indexed by total
/// degree, so the coefficient map is defined for every (i, j) with
/// i + j <= capacity(). The reported degree is the largest i + j that carries
/// a nonzero coefficient; the zero polynomial has degree -1.
class Polynomial {
public:
  struct Term {
    int i;
    int j;
    double coeff;
  };

  Polynomial() = default;

  static Polynomial constant(double c);
  static Polynomial monomial(int i, int j, double c = 1.0);

  int degree() const;
  bool is_zero() const { return degree() < 0; }

  double coefficient(int i, int j) const;
  void set_coefficient(int i, int j, double c);
  void add_to_coefficient(int i, int j, double c);

  /// Nonzero terms ordered by total degree, then by descending power of x.
  std::vector<Term> terms() const;

  double operator()(double x, double y) const;

  /// Sum of |c_ij| |x|^i |y|^j; bounds the rounding error of operator().
  double magnitude(double x, double y) const;

  Polynomial derivative(Axis axis) const;

  /// p(x / r, y / r).
  Polynomial dilated(double r) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, double s) { return lhs *= s; }
  friend Polynomial operator*(double s, Polynomial rhs) { return rhs *= s; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

  /// Exact coefficient-map equality (trailing zero capacity ignored).
  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs);

private:
  static std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(d + 1) / 2 + static_cast<std::size_t>(j);
  }
  int capacity() const { return capacity_; }
  void reserve_degree(int d);
  void trim();

  int capacity_ = -1;
  std::vector<double> coeffs_;
};

} // namespace starburst
