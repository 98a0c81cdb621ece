#include <gtest/gtest.h>

#include <random>

#include "starburst/polynomial.hpp"

using namespace starburst;

namespace {

template <class Dist>
Polynomial random_polynomial(std::mt19937_64& rng, int degree, Dist& u) {
  Polynomial p;
  for (int d = 0; d <= degree; ++d)
    for (int j = 0; j <= d; ++j) p.set_coefficient(d - j, j, u(rng));
  return p;
}

Polynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return random_polynomial(rng, degree, u);
}

} // namespace

TEST(Polynomial, ZeroPolynomialHasDegreeMinusOne) {
  Polynomial p;
  EXPECT_EQ(p.degree(), -1);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p(0.3, -0.7), 0.0);
  EXPECT_TRUE(p.terms().empty());
}

TEST(Polynomial, SettingZeroCoefficientLowersDegree) {
  Polynomial p = Polynomial::monomial(3, 1, 2.0) + Polynomial::constant(1.0);
  EXPECT_EQ(p.degree(), 4);
  p.set_coefficient(3, 1, 0.0);
  EXPECT_EQ(p.degree(), 0);
}

TEST(Polynomial, DerivativeOfXSquaredY) {
  const Polynomial p = Polynomial::monomial(2, 1);
  EXPECT_EQ(p.derivative(Axis::X), Polynomial::monomial(1, 1, 2.0));
  EXPECT_EQ(p.derivative(Axis::Y), Polynomial::monomial(2, 0));
  EXPECT_TRUE(Polynomial::constant(5.0).derivative(Axis::X).is_zero());
}

TEST(Polynomial, MixedPartialsCommute) {
  // integer coefficients keep the comparison exact
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-50, 50);
  for (int k = 0; k < 20; ++k) {
    const Polynomial p = random_polynomial(rng, 9, u);
    EXPECT_EQ(p.derivative(Axis::X).derivative(Axis::Y), p.derivative(Axis::Y).derivative(Axis::X));
  }
}

TEST(Polynomial, ProductMatchesPointwise) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Polynomial a = random_polynomial(rng, 5);
  const Polynomial b = random_polynomial(rng, 6);
  const Polynomial c = a * b;
  EXPECT_EQ(c.degree(), 11);
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng), y = u(rng);
    EXPECT_NEAR(c(x, y), a(x, y) * b(x, y), 1e-12);
  }
}

TEST(Polynomial, DilatedMatchesScaledArguments) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Polynomial p = random_polynomial(rng, 8);
  const Polynomial q = p.dilated(2.5);
  for (int k = 0; k < 50; ++k) {
    const double x = 2.5 * u(rng), y = 2.5 * u(rng);
    EXPECT_NEAR(q(x, y), p(x / 2.5, y / 2.5), 1e-12);
  }
}

TEST(Polynomial, TermsAreOrderedByDegreeThenDescendingPowerOfX) {
  const Polynomial p = Polynomial::monomial(0, 2) + Polynomial::monomial(2, 0) + Polynomial::monomial(1, 0);
  const auto t = p.terms();
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].i + t[0].j, 1);
  EXPECT_GT(t[1].i, t[2].i);
}

TEST(Polynomial, MagnitudeBoundsValue) {
  std::mt19937_64 rng(6);
  const Polynomial p = random_polynomial(rng, 7);
  EXPECT_GE(p.magnitude(0.4, -0.9), std::abs(p(0.4, -0.9)));
}
