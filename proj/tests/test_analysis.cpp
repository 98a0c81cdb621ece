#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "starburst/analysis.hpp"
#include "starburst/errors.hpp"
#include "starburst/fixtures.hpp"

using namespace starburst;

namespace {

WaveAberration fixture_wavefront(const std::string& name) {
  for (const auto& f : published_fixtures())
    if (f.name == name) return WaveAberration(f.terms, 3.5);
  throw std::runtime_error("no fixture " + name);
}

WaveAberration random_shorthand(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  return WaveAberration::from_shorthand(u(rng), u(rng), u(rng), n);
}

Point2 random_disk_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double x, y;
  do {
    x = u(rng);
    y = u(rng);
  } while (x * x + y * y > 1.0);
  return {x, y};
}

} // namespace

TEST(HessianField, PureDefocusGivesConstant48AlphaSquared) {
  const double alpha = 0.3;
  const HessianField f = build_field(WaveAberration::from_shorthand(alpha, 0.0, 0.0, 3));
  EXPECT_EQ(f.g.degree(), 0);
  EXPECT_NEAR(f.g(0.2, 0.4), 48.0 * alpha * alpha, 1e-13);
  EXPECT_TRUE(f.gx.is_zero());
}

TEST(HessianField, GIsDeterminantOfHessianOfW) {
  std::mt19937_64 rng(21);
  for (int n = 3; n <= 6; ++n) {
    const HessianField f = build_field(random_shorthand(rng, n));
    const Polynomial residual = f.g - (f.wxx * f.wyy - f.wxy * f.wxy);
    EXPECT_LT(residual.degree(), 0);
  }
}

TEST(HessianField, GMatchesExtendedPrecisionHessianOfW) {
  std::mt19937_64 rng(22);
  const WaveAberration w = fixture_wavefront("5star");
  const HessianField f = build_field(w);
  for (int k = 0; k < 200; ++k) {
    const Point2 p = random_disk_point(rng);
    const auto d = oracle::finite_differences(f.w, p.x, p.y);
    EXPECT_NEAR(f.g(p.x, p.y), d.gxx * d.gyy - d.gxy * d.gxy, 1e-6);
  }
}

TEST(HessianField, DegreeOfGForQuarticWavefront) {
  EXPECT_EQ(build_field(fixture_wavefront("3star")).g.degree(), 4);
  EXPECT_EQ(build_field(fixture_wavefront("6star")).g.degree(), 8);
}

TEST(HessianField, GradientAndHessianMatchFiniteDifferences) {
  std::mt19937_64 rng(23);
  for (int n = 3; n <= 6; ++n) {
    const HessianField f = build_field(random_shorthand(rng, n));
    for (int k = 0; k < 100; ++k) {
      const Point2 p = random_disk_point(rng);
      const auto d = oracle::finite_differences(f.g, p.x, p.y);
      EXPECT_NEAR(f.gx(p.x, p.y), d.gx, 1e-5);
      EXPECT_NEAR(f.gy(p.x, p.y), d.gy, 1e-5);
      EXPECT_NEAR(f.gxx(p.x, p.y), d.gxx, 1e-5);
      EXPECT_NEAR(f.gxy(p.x, p.y), d.gxy, 1e-5);
      EXPECT_NEAR(f.gyy(p.x, p.y), d.gyy, 1e-5);
    }
  }
}

TEST(HessianField, AcceptsOrderTwelve) {
  WaveAberration w(3.5);
  w.add({12, 12, 0.1});
  EXPECT_NO_THROW(build_field(w));
}

TEST(SaddleBound, Values) {
  EXPECT_EQ(saddle_upper_bound(2), 0);
  EXPECT_EQ(saddle_upper_bound(3), 1);
  EXPECT_EQ(saddle_upper_bound(4), 6);
  EXPECT_EQ(saddle_upper_bound(5), 15);
  EXPECT_EQ(saddle_upper_bound(6), 28);
  EXPECT_EQ(saddle_upper_bound(fixture_wavefront("5star")), 15);
}

TEST(CriticalPoints, FixtureCensus) {
  struct Expect {
    const char* name;
    std::size_t cusps, saddles;
  };
  for (const Expect& e : {Expect{"3star", 7, 3}, Expect{"5star", 11, 5}, Expect{"4star", 9, 4}, Expect{"6star", 7, 6},
                          Expect{"8star", 9, 4}}) {
    const CriticalPointSet s = find_critical_points(build_field(fixture_wavefront(e.name)));
    EXPECT_FALSE(s.degenerate_field) << e.name;
    EXPECT_EQ(s.points.size(), e.cusps) << e.name;
    EXPECT_EQ(s.count(PointClass::Saddle), e.saddles) << e.name;
  }
}

TEST(CriticalPoints, PointsAreStationaryAndClassifiedBySign) {
  const HessianField f = build_field(fixture_wavefront("4star"));
  const CriticalPointSet s = find_critical_points(f);
  for (const auto& p : s.points) {
    const auto d = oracle::finite_differences(f.g, p.x, p.y);
    EXPECT_LT(std::hypot(d.gx, d.gy), 1e-8);
    const double det = d.gxx * d.gyy - d.gxy * d.gxy;
    EXPECT_EQ(p.kind == PointClass::Saddle, det < 0.0);
    EXPECT_NEAR(p.rho, std::hypot(p.x, p.y), 1e-15);
  }
}

TEST(CriticalPoints, ThreeStarSaddlesSitOnTheOddRingFromBisection) {
  const CriticalPointSet s = find_critical_points(build_field(fixture_wavefront("3star")));
  const double rho = oracle::bisect([](double r) { return oracle::a_of(0, 0.2, 0.2, 3, r) + oracle::b_of(0.2, 0.2, 3, r); },
                                    0.0, 1.0);
  EXPECT_NEAR(rho, 0.5178, 1e-4);
  for (const auto& p : s.saddles()) {
    EXPECT_NEAR(p.rho, rho, 1e-10);
    EXPECT_LT(oracle::lattice_distance(p.theta, std::numbers::pi / 3, 3), 1e-10);
  }
}

TEST(CriticalPoints, SaddleSetIsInvariantUnderRotation) {
  for (const char* name : {"3star", "5star", "4star", "6star"}) {
    const WaveAberration w = fixture_wavefront(name);
    const int n = w.azimuthal_signature();
    const auto saddles = find_critical_points(build_field(w)).saddles();
    const double c = std::cos(2 * std::numbers::pi / n), sn = std::sin(2 * std::numbers::pi / n);
    for (const auto& p : saddles) {
      const double rx = c * p.x + sn * p.y, ry = -sn * p.x + c * p.y;
      double best = 1e9;
      for (const auto& q : saddles) best = std::min(best, std::hypot(q.x - rx, q.y - ry));
      EXPECT_LT(best, 1e-8) << name;
    }
  }
}

TEST(CriticalPoints, RotationallySymmetricFieldsAreDegenerate) {
  EXPECT_TRUE(find_critical_points(build_field(WaveAberration::from_shorthand(0.4, 0.0, 0.0, 3))).degenerate_field);
  EXPECT_TRUE(find_critical_points(build_field(WaveAberration::from_shorthand(0.1, 0.2, 0.0, 3))).degenerate_field);
  EXPECT_TRUE(find_critical_points(build_field(WaveAberration(3.5))).degenerate_field);
}

TEST(CriticalPoints, Deterministic) {
  const HessianField f = build_field(fixture_wavefront("6star"));
  const auto a = find_critical_points(f), b = find_critical_points(f);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].x, b.points[i].x);
    EXPECT_EQ(a.points[i].y, b.points[i].y);
    EXPECT_EQ(a.points[i].kind, b.points[i].kind);
  }
}

TEST(CriticalPoints, OrderedByRadiusThenAngle) {
  const auto s = find_critical_points(build_field(fixture_wavefront("5star")));
  for (std::size_t i = 1; i < s.points.size(); ++i) EXPECT_LE(s.points[i - 1].rho, s.points[i].rho + 1e-6);
}

TEST(CriticalPoints, ClassifyAgreesWithFinder) {
  const HessianField f = build_field(fixture_wavefront("5star"));
  const auto s = find_critical_points(f);
  for (const auto& p : s.points) EXPECT_EQ(classify(p.x, p.y, f, s.degeneracy_threshold), p.kind);
}

TEST(Rescale, FixturesAreScaleInvariant) {
  for (const auto& fx : published_fixtures()) {
    for (double r : {0.5, 2.0}) {
      const RescaleReport rep = rescale_check(WaveAberration(fx.terms, 3.5), r);
      EXPECT_TRUE(rep.passed) << fx.name << " r=" << r << ": " << rep.diagnostic;
      EXPECT_EQ(rep.original_count, rep.scaled_count);
      EXPECT_LT(rep.max_position_error, 1e-8);
    }
  }
}

TEST(Rescale, DefocusIsVacuous) {
  const RescaleReport rep = rescale_check(WaveAberration::from_shorthand(0.3, 0.0, 0.0, 3), 2.0);
  EXPECT_TRUE(rep.vacuous);
}

TEST(Rescale, RejectsNonPositiveFactor) {
  EXPECT_THROW(rescale_check(fixture_wavefront("3star"), 0.0), ValidationError);
}
