#include "starburst/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace starburst {

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.set_coefficient(0, 0, c);
  return p;
}

Polynomial Polynomial::monomial(int i, int j, double c) {
  Polynomial p;
  p.set_coefficient(i, j, c);
  return p;
}

int Polynomial::degree() const {
  for (int d = capacity_; d >= 0; --d) {
    for (int j = 0; j <= d; ++j) {
      if (coeffs_[index(d - j, j)] != 0.0) return d;
    }
  }
  return -1;
}

double Polynomial::coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i + j > capacity_) return 0.0;
  return coeffs_[index(i, j)];
}

void Polynomial::set_coefficient(int i, int j, double c) {
  if (i + j > capacity_) {
    if (c == 0.0) return;
    reserve_degree(i + j);
  }
  coeffs_[index(i, j)] = c;
}

void Polynomial::add_to_coefficient(int i, int j, double c) {
  if (c == 0.0) return;
  if (i + j > capacity_) reserve_degree(i + j);
  coeffs_[index(i, j)] += c;
}

void Polynomial::reserve_degree(int d) {
  if (d <= capacity_) return;
  capacity_ = d;
  coeffs_.resize(index(0, d) + 1, 0.0);
}

void Polynomial::trim() {
  const int d = degree();
  capacity_ = d;
  coeffs_.resize(d < 0 ? 0 : index(0, d) + 1);
}

std::vector<Polynomial::Term> Polynomial::terms() const {
  std::vector<Term> out;
  for (int d = 0; d <= capacity_; ++d) {
    for (int i = d; i >= 0; --i) {
      const double c = coeffs_[index(i, d - i)];
      if (c != 0.0) out.push_back({i, d - i, c});
    }
  }
  return out;
}

double Polynomial::operator()(double x, double y) const {
  // Horner in y for each power of x, then Horner in x.
  double acc = 0.0;
  for (int i = capacity_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = capacity_ - i; j >= 0; --j) inner = inner * y + coeffs_[index(i, j)];
    acc = acc * x + inner;
  }
  return acc;
}

double Polynomial::magnitude(double x, double y) const {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  double acc = 0.0;
  for (int i = capacity_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = capacity_ - i; j >= 0; --j) inner = inner * ay + std::abs(coeffs_[index(i, j)]);
    acc = acc * ax + inner;
  }
  return acc;
}

Polynomial Polynomial::derivative(Axis axis) const {
  Polynomial out;
  if (capacity_ <= 0) return out;
  out.reserve_degree(capacity_ - 1);
  for (int d = 1; d <= capacity_; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double c = coeffs_[index(i, j)];
      if (c == 0.0) continue;
      if (axis == Axis::X && i > 0) out.coeffs_[index(i - 1, j)] += c * i;
      if (axis == Axis::Y && j > 0) out.coeffs_[index(i, j - 1)] += c * j;
    }
  }
  out.trim();
  return out;
}

Polynomial Polynomial::dilated(double r) const {
  Polynomial out = *this;
  double scale = 1.0;
  for (int d = 0; d <= capacity_; ++d) {
    for (int j = 0; j <= d; ++j) out.coeffs_[index(d - j, j)] *= scale;
    scale /= r;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  reserve_degree(rhs.capacity_);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  reserve_degree(rhs.capacity_);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  Polynomial out;
  if (lhs.capacity_ < 0 || rhs.capacity_ < 0) return out;
  out.reserve_degree(lhs.capacity_ + rhs.capacity_);
  for (const auto& a : lhs.terms()) {
    for (const auto& b : rhs.terms()) {
      out.coeffs_[Polynomial::index(a.i + b.i, a.j + b.j)] += a.coeff * b.coeff;
    }
  }
  out.trim();
  return out;
}

bool operator==(const Polynomial& lhs, const Polynomial& rhs) {
  const int d = std::max(lhs.capacity_, rhs.capacity_);
  for (int k = 0; k <= d; ++k) {
    for (int j = 0; j <= k; ++j) {
      if (lhs.coefficient(k - j, j) != rhs.coefficient(k - j, j)) return false;
    }
  }
  return true;
}

} // namespace starburst
