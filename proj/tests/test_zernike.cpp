#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "starburst/errors.hpp"
#include "starburst/zernike.hpp"

using namespace starburst;

namespace {

std::vector<ZernikeTerm> all_terms(int max_n) {
  std::vector<ZernikeTerm> out;
  for (int n = 0; n <= max_n; ++n)
    for (int m = -n; m <= n; m += 2) out.emplace_back(n, m, 1.0);
  return out;
}

double eval(const ZernikeTerm& t, double x, double y) { return to_polynomial(t)(x, y); }

} // namespace

TEST(Zernike, KnownValues) {
  EXPECT_NEAR(eval({2, 0, 1.0}, 0.0, 0.0), -std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(eval({4, 0, 1.0}, 0.0, 1.0), std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(eval({4, 0, 1.0}, 1.0, 0.0), std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(eval({3, 3, 1.0}, 0.0, 1.0), std::sqrt(8.0), 1e-14);
  EXPECT_NEAR(eval({3, 3, 1.0}, 0.0, 0.0), 0.0, 1e-15);
  // Z20 vanishes on rho^2 = 1/2
  EXPECT_NEAR(eval({2, 0, 1.0}, 0.5, 0.5), 0.0, 1e-15);
}

TEST(Zernike, PolarConventionPutsThetaZeroOnPlusY) {
  // sin(theta) term Z_1^-1 is x, cos(theta) term Z_1^1 is y
  EXPECT_NEAR(eval({1, -1, 1.0}, 0.3, 0.0), 2.0 * 0.3, 1e-15);
  EXPECT_NEAR(eval({1, 1, 1.0}, 0.0, 0.3), 2.0 * 0.3, 1e-15);
  EXPECT_NEAR(eval({1, 1, 1.0}, 0.3, 0.0), 0.0, 1e-15);
}

TEST(Zernike, CartesianExpansionMatchesJacobiReference) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto terms = all_terms(kMaxRadialOrder);
  std::vector<Polynomial> polys;
  for (const auto& t : terms) polys.push_back(to_polynomial(t));
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double rho = std::sqrt(u(rng));
    const double theta = 2.0 * std::numbers::pi * u(rng);
    const double x = rho * std::sin(theta), y = rho * std::cos(theta);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double ref = oracle::zernike(terms[i].n(), terms[i].m(), rho, theta);
      const double peak = zernike_normalization(terms[i].n(), terms[i].m());
      worst = std::max(worst, std::abs(polys[i](x, y) - ref) / peak);
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Zernike, PolarEvaluationMatchesReference) {
  for (const auto& t : all_terms(kMaxRadialOrder))
    for (double rho : {0.0, 0.3, 0.77, 1.0})
      EXPECT_NEAR(t.evaluate_polar(rho, 1.1), oracle::zernike(t.n(), t.m(), rho, 1.1), 1e-12);
}

TEST(Zernike, NormalizationFactors) {
  EXPECT_DOUBLE_EQ(zernike_normalization(2, 0), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(zernike_normalization(4, 0), std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(zernike_normalization(3, 3), std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(zernike_normalization(5, -5), std::sqrt(12.0));
}

TEST(Zernike, DegreeEqualsRadialOrder) {
  for (const auto& t : all_terms(kMaxRadialOrder)) EXPECT_EQ(to_polynomial(t).degree(), t.n()) << t.n() << "," << t.m();
}

TEST(Zernike, DerivativesMatchCentralDifferences) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  for (const auto& t : all_terms(8)) {
    const Polynomial p = to_polynomial(t);
    const Polynomial px = p.derivative(Axis::X), py = p.derivative(Axis::Y);
    for (int k = 0; k < 200; ++k) {
      double x, y;
      do {
        x = u(rng);
        y = u(rng);
      } while (x * x + y * y > 1.0);
      EXPECT_NEAR(px(x, y), (p(x + h, y) - p(x - h, y)) / (2 * h), 1e-6);
      EXPECT_NEAR(py(x, y), (p(x, y + h) - p(x, y - h)) / (2 * h), 1e-6);
    }
  }
}

TEST(Zernike, DefocusAndSphericalAreNearlyOrthogonal) {
  const Polynomial a = to_polynomial({2, 0, 1.0});
  const Polynomial b = to_polynomial({4, 0, 1.0});
  const int n = 1024;
  const double h = 2.0 / n;
  double ab = 0.0, aa = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -1.0 + (i + 0.5) * h, y = -1.0 + (j + 0.5) * h;
      if (x * x + y * y > 1.0) continue;
      ab += a(x, y) * b(x, y) * h * h;
      aa += a(x, y) * a(x, y) * h * h;
    }
  EXPECT_LT(std::abs(ab), 1e-3);
  EXPECT_NEAR(aa, std::numbers::pi, 1e-2);
}

TEST(Zernike, RejectsInvalidIndices) {
  EXPECT_THROW(ZernikeTerm(3, 2, 1.0), ValidationError);
  EXPECT_THROW(ZernikeTerm(2, 4, 1.0), ValidationError);
  EXPECT_THROW(ZernikeTerm(-1, 1, 1.0), ValidationError);
  EXPECT_THROW(ZernikeTerm(14, 0, 1.0), CapabilityError);
  EXPECT_NO_THROW(ZernikeTerm(12, -12, 1.0));
}

TEST(WaveAberration, ShorthandDropsZeroCoefficients) {
  const auto w = WaveAberration::from_shorthand(0.0, 0.2, 0.1, 5);
  ASSERT_EQ(w.terms().size(), 2u);
  EXPECT_EQ(w.degree(), 5);
  EXPECT_EQ(w.azimuthal_signature(), 5);
  EXPECT_DOUBLE_EQ(w.pupil_radius(), 3.5);
  EXPECT_EQ(WaveAberration::from_shorthand(0.0, 0.0, 0.0, 3).degree(), 0);
}

TEST(WaveAberration, RejectsDuplicateTerms) {
  WaveAberration w(3.5);
  w.add({4, 0, 0.2});
  EXPECT_THROW(w.add({4, 0, 0.1}), ValidationError);
}

TEST(WaveAberration, PolynomialIsSumOfTerms) {
  const WaveAberration w({{4, 0, 0.2}, {3, 3, 0.2}}, 3.5);
  const Polynomial expected = to_polynomial({4, 0, 0.2}) + to_polynomial({3, 3, 0.2});
  for (double x : {-0.4, 0.1, 0.7})
    EXPECT_NEAR(w.polynomial()(x, 0.3), expected(x, 0.3), 1e-14);
}

TEST(WaveAberration, AzimuthalSignatureIsGcd) {
  EXPECT_EQ(WaveAberration({{4, 4, 0.1}, {6, 6, 0.1}}, 3.5).azimuthal_signature(), 2);
  EXPECT_EQ(WaveAberration({{4, 0, 0.1}}, 3.5).azimuthal_signature(), 0);
}
