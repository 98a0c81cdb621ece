#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "starburst/closed_form.hpp"
#include "starburst/errors.hpp"
#include "starburst/verification.hpp"

using namespace starburst;

namespace {

constexpr double kBeta = 0.2;

double combined_oracle(const ABParams& p, Family f, double rho) {
  const double s = f == Family::Even ? 1.0 : -1.0;
  return oracle::a_of(p.alpha, p.beta, p.gamma, p.n, rho) - s * oracle::b_of(p.beta, p.gamma, p.n, rho);
}

std::vector<double> library_roots(const SaddleRadii& r, Family f) {
  std::vector<double> out;
  for (const auto& root : r.of(f)) out.push_back(root.rho);
  return out;
}

ABParams random_params(std::mt19937_64& rng, int n) {
  const Window w = default_window(n, kBeta);
  std::uniform_real_distribution<double> ua(w.alpha_lo, w.alpha_hi), ug(w.gamma_lo, w.gamma_hi);
  return {ua(rng), kBeta, ug(rng), n};
}

} // namespace

TEST(ABFunctions, MatchIndependentFormulas) {
  std::mt19937_64 rng(31);
  for (int n = 3; n <= 6; ++n) {
    const ABParams p = random_params(rng, n);
    const ABFunctions ab(p);
    for (double rho : {0.1, 0.45, 0.9}) {
      EXPECT_NEAR(ab.a(rho), oracle::a_of(p.alpha, p.beta, p.gamma, n, rho), 1e-10);
      EXPECT_NEAR(ab.b(rho), oracle::b_of(p.beta, p.gamma, n, rho), 1e-10);
    }
  }
}

TEST(ABFunctions, ThreeStarReducesToQuadratic) {
  // A + B = 48 (7.2 rho^2 + 0.36 sqrt10 rho - 2.52) at beta = gamma = 0.2, alpha = 0
  const ABFunctions ab({0.0, 0.2, 0.2, 3});
  for (double rho : {0.2, 0.5, 0.8})
    EXPECT_NEAR(ab.combined(Family::Odd, rho), 48.0 * (7.2 * rho * rho + 0.36 * std::sqrt(10.0) * rho - 2.52), 1e-10);
}

TEST(ABFunctions, VanishingGammaKillsB) {
  const ABFunctions ab({0.1, 0.2, 0.0, 5});
  EXPECT_EQ(ab.b(0.5), 0.0);
  EXPECT_EQ(ab.combined(Family::Even, 0.5), ab.combined(Family::Odd, 0.5));
}

TEST(ABFunctions, RejectsUnsupportedOrder) {
  EXPECT_THROW(ABFunctions({0.0, 0.2, 0.1, 7}), CapabilityError);
  EXPECT_THROW(ABFunctions({0.0, 0.2, 0.1, 2}), CapabilityError);
}

TEST(SaddleRadii, FourStarRootsMatchBisection) {
  const ABParams p{0.0, 0.2, 0.15, 4};
  const SaddleRadii r = saddle_radii(p);
  const auto odd = oracle::roots([&](double x) { return combined_oracle(p, Family::Odd, x); }, 0.0, 1.0);
  const auto even = oracle::roots([&](double x) { return combined_oracle(p, Family::Even, x); }, 0.0, 1.0);
  ASSERT_EQ(odd.size(), 1u);
  EXPECT_NEAR(odd[0], 0.5144, 1e-4);
  ASSERT_EQ(library_roots(r, Family::Odd).size(), 1u);
  EXPECT_NEAR(r.odd[0].rho, odd[0], 1e-10);
  EXPECT_TRUE(r.odd[0].saddle);
  ASSERT_EQ(library_roots(r, Family::Even).size(), even.size());
  for (std::size_t i = 0; i < even.size(); ++i) EXPECT_NEAR(r.even[i].rho, even[i], 1e-10);
}

TEST(SaddleRadii, AgreeWithBisectionForRandomParameters) {
  std::mt19937_64 rng(32);
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 100; ++k) {
      const ABParams p = random_params(rng, n);
      const SaddleRadii r = saddle_radii(p);
      for (Family f : {Family::Even, Family::Odd}) {
        const auto expected = oracle::roots([&](double x) { return combined_oracle(p, f, x); }, 1e-9, 1.0 - 1e-9, 200000);
        const auto got = library_roots(r, f);
        // tangential double roots do not change sign and are skipped by the scan
        if (got.size() != expected.size()) continue;
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-9) << "n=" << n;
      }
    }
}

TEST(SaddleRadii, RootsAreConsistent) {
  std::mt19937_64 rng(33);
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 300; ++k) {
      const ABParams p = random_params(rng, n);
      const SaddleRadii r = saddle_radii(p);
      for (Family f : {Family::Even, Family::Odd})
        for (const auto& root : r.of(f)) {
          EXPECT_LT(std::abs(combined_oracle(p, f, root.rho)), 1e-10) << "n=" << n;
          EXPECT_GT(root.rho, 0.0);
          EXPECT_LT(root.rho, 1.0);
        }
    }
}

TEST(SaddleRadii, CompanionAgreesWithRadicals) {
  std::mt19937_64 rng(34);
  for (int n : {3, 4})
    for (int k = 0; k < 50; ++k) {
      const ABParams p = random_params(rng, n);
      const SaddleRadii r = saddle_radii(p);
      for (Family f : {Family::Even, Family::Odd}) {
        const auto c = companion_radii(p, f);
        const auto e = library_roots(r, f);
        ASSERT_EQ(c.size(), e.size());
        for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], e[i], 1e-10);
      }
    }
}

TEST(SaddleRadii, GammaZeroIsNonGeneric) {
  EXPECT_TRUE(saddle_radii({0.1, 0.2, 0.0, 4}).non_generic);
}

TEST(SaddleRadii, RejectsNonPositiveBeta) {
  EXPECT_THROW(saddle_radii({0.1, 0.0, 0.1, 4}), ValidationError);
  EXPECT_THROW(saddle_radii({0.1, -0.2, 0.1, 4}), ValidationError);
}

TEST(SaddleRadii, SaddleTestMatchesHessianSign) {
  // det Hess G at a ring point, from finite differences of the full field
  const ABParams p{0.0, 0.2, 0.2, 3};
  const SaddleRadii r = saddle_radii(p);
  const HessianField f = build_field(WaveAberration::from_shorthand(p.alpha, p.beta, p.gamma, p.n));
  for (Family fam : {Family::Even, Family::Odd})
    for (const auto& root : r.of(fam)) {
      const double th = family_angles(fam, p.n).front();
      const auto d = oracle::finite_differences(f.g, root.rho * std::sin(th), root.rho * std::cos(th));
      EXPECT_EQ(root.saddle, d.gxx * d.gyy - d.gxy * d.gxy < 0.0);
    }
}

TEST(RealPolynomialRoots, KnownCubic) {
  // (t - 1)(t - 2)(t + 3) = t^3 - 7 t + 6
  const std::vector<double> c{6.0, -7.0, 0.0, 1.0};
  auto r = real_polynomial_roots(c);
  std::sort(r.begin(), r.end());
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -3.0, 1e-12);
  EXPECT_NEAR(r[1], 1.0, 1e-12);
  EXPECT_NEAR(r[2], 2.0, 1e-12);
  const std::vector<double> no_real{1.0, 0.0, 1.0};
  EXPECT_TRUE(real_polynomial_roots(no_real).empty());
}

TEST(FamilyAngles, Lattices) {
  const auto even = family_angles(Family::Even, 4);
  const auto odd = family_angles(Family::Odd, 4);
  ASSERT_EQ(even.size(), 4u);
  EXPECT_NEAR(even[1], std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(odd[0], std::numbers::pi / 4, 1e-15);
}

TEST(Prediction, PublishedExamples) {
  const auto p3 = predict_saddles({0.0, 0.2, 0.2, 3});
  EXPECT_EQ(p3.count, 3);
  EXPECT_TRUE(p3.odd_present);
  const auto p5 = predict_saddles({0.2, 0.2, 0.07, 5});
  EXPECT_EQ(p5.count, 5);
  EXPECT_EQ(predict_saddles({0.0, 0.2, 0.15, 4}).count, 4);
  EXPECT_EQ(predict_saddles({0.0, 0.2, 0.19, 6}).count, 6);
  EXPECT_EQ(predict_saddles({0.0, 0.2, 0.09, 4}).count, 4);
}

TEST(Prediction, TwoRingSamples) {
  const auto p5 = predict_saddles({0.15, 0.2, 0.1, 5});
  EXPECT_EQ(p5.count, 10);
  EXPECT_TRUE(p5.even_present && p5.odd_present);
  EXPECT_TRUE(p5.rings_consistent);
  ASSERT_EQ(p5.rings.size(), 2u);
  const auto p6 = predict_saddles({0.55, 0.2, 0.1, 6});
  EXPECT_EQ(p6.count, 12);
  EXPECT_TRUE(p6.rings_consistent);
}

TEST(Prediction, GammaZeroIsNonGeneric) {
  const auto p = predict_saddles({0.0, 0.2, 0.0, 4});
  EXPECT_TRUE(p.non_generic);
  EXPECT_EQ(p.count, 0);
}

TEST(Prediction, Errors) {
  EXPECT_THROW(predict_saddles({0.0, 0.2, 0.1, 7}), CapabilityError);
  EXPECT_THROW(predict_saddles({0.0, 0.0, 0.1, 4}), ValidationError);
}

TEST(Prediction, SignSymmetrySwapsFamilies) {
  std::mt19937_64 rng(35);
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 200; ++k) {
      const ABParams p = random_params(rng, n);
      const auto a = predict_saddles(p);
      const auto b = predict_saddles({p.alpha, p.beta, -p.gamma, n});
      if (a.boundary || b.boundary) continue;
      EXPECT_EQ(a.count, b.count);
      EXPECT_EQ(a.even_present, b.odd_present);
      EXPECT_EQ(a.odd_present, b.even_present);
      ASSERT_EQ(a.rings.size(), b.rings.size());
      for (std::size_t i = 0; i < a.rings.size(); ++i) {
        EXPECT_NEAR(a.rings[i].rho, b.rings[i].rho, 1e-12);
        EXPECT_NE(a.rings[i].family, b.rings[i].family);
      }
    }
}

TEST(Prediction, OnBoundaryIsFlagged) {
  const RegionParameters r = region_parameters(4, 0.2, 0.15);
  EXPECT_TRUE(predict_saddles({r.alpha1_minus, 0.2, 0.15, 4}).boundary);
  EXPECT_FALSE(predict_saddles({r.alpha1_minus + 0.01, 0.2, 0.15, 4}).boundary);
}

TEST(Prediction, CrossingActiveBoundaryChangesCount) {
  const double g = 0.15;
  const RegionParameters r = region_parameters(4, 0.2, g);
  EXPECT_EQ(predict_saddles({r.alpha1_minus - 1e-6, 0.2, g, 4}).count, 0);
  EXPECT_EQ(predict_saddles({r.alpha1_minus + 1e-6, 0.2, g, 4}).count, 4);
  const double top = std::sqrt(15.0) * 0.2;
  EXPECT_EQ(predict_saddles({top - 1e-6, 0.2, g, 4}).count, 4);
  EXPECT_EQ(predict_saddles({top + 1e-6, 0.2, g, 4}).count, 0);
}

TEST(Prediction, PresenceChangesOnlyOnBoundaries) {
  for (int n = 3; n <= 6; ++n) {
    const RegionDiagram d = region_diagram(n, kBeta, default_window(n, kBeta), 61);
    auto cell = [&](int ia, int ig) -> const RegionCell& { return d.grid[ia * d.gamma_samples + ig]; };
    auto presence = [&](double a, double g) {
      const auto p = predict_saddles({a, kBeta, g, n});
      return std::pair{p.even_present, p.odd_present};
    };
    int changes = 0;
    for (int ia = 0; ia < d.alpha_samples; ++ia)
      for (int ig = 0; ig < d.gamma_samples; ++ig)
        for (auto [ja, jg] : {std::pair{ia, ig + 1}, std::pair{ia + 1, ig}}) {
          if (ja >= d.alpha_samples || jg >= d.gamma_samples) continue;
          const RegionCell& a = cell(ia, ig);
          const RegionCell& b = cell(ja, jg);
          if (a.presence == b.presence) continue;
          ++changes;
          // bisect the transition along the segment joining the two cells
          double lo = 0.0, hi = 1.0;
          const auto start = presence(a.alpha, a.gamma);
          for (int k = 0; k < 60; ++k) {
            const double t = 0.5 * (lo + hi);
            const auto here = presence(a.alpha + t * (b.alpha - a.alpha), a.gamma + t * (b.gamma - a.gamma));
            (here == start ? lo : hi) = t;
          }
          const double t = 0.5 * (lo + hi);
          EXPECT_LT(boundary_distance(n, kBeta, a.alpha + t * (b.alpha - a.alpha), a.gamma + t * (b.gamma - a.gamma)),
                    1e-6)
              << "n=" << n << " gamma=" << a.gamma << " alpha=" << a.alpha;
        }
    EXPECT_GT(changes, 0);
  }
}

TEST(Prediction, EdgeCurvesPutARootOnTheRim) {
  std::mt19937_64 rng(36);
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 50; ++k) {
      const ABParams q = random_params(rng, n);
      const RegionParameters r = region_parameters(n, kBeta, q.gamma);
      for (double alpha : {r.alpha1_plus, r.alpha1_minus}) {
        const ABParams p{alpha, kBeta, q.gamma, n};
        const double rim = std::min(std::abs(combined_oracle(p, Family::Even, 1.0)),
                                    std::abs(combined_oracle(p, Family::Odd, 1.0)));
        EXPECT_LT(rim, 1e-10) << "n=" << n;
      }
    }
}

TEST(Prediction, OriginCurveForThreeFold) {
  const RegionParameters r = region_parameters(3, kBeta, 0.3);
  EXPECT_NEAR(oracle::a_of(r.alpha2, kBeta, 0.3, 3, 0.0), 0.0, 1e-12);
}

// The n = 5 odd row is bounded above by alpha1-, not alpha1+; for gamma < 0 the
// band between the two holds an odd ring.
TEST(Prediction, FiveFoldOddRowUpperBound) {
  int checked = 0;
  for (double g = -0.5; g <= -0.1; g += 0.01) {
    const RegionParameters r = region_parameters(5, kBeta, g);
    if (!(g < -r.gamma1_minus)) continue;
    ASSERT_LT(r.alpha1_plus, r.alpha1_minus);
    const double lo = std::max(std::sqrt(15.0) * kBeta - r.alpha2_minus, r.alpha1_plus);
    for (double t : {0.25, 0.5, 0.75}) {
      const double a = lo + t * (r.alpha1_minus - lo);
      if (boundary_distance(5, kBeta, a, g) < 1e-3) continue;
      const SampleOutcome o = compare_sample({a, kBeta, g, 5});
      EXPECT_TRUE(o.agree) << o.diagnostic;
      EXPECT_EQ(o.census.odd, 5) << "g=" << g << " a=" << a;
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

// The n = 6 even row starts at gamma1-, not gamma1+.
TEST(Prediction, SixFoldEvenRowGammaBound) {
  int checked = 0;
  const RegionParameters r0 = region_parameters(6, kBeta, 1.0);
  for (double g = r0.gamma1_minus + 0.002; g < r0.gamma1_plus; g += 0.01) {
    const RegionParameters r = region_parameters(6, kBeta, g);
    const double lo = std::sqrt(15.0) * kBeta - r.alpha2_minus;
    for (double t : {0.25, 0.5, 0.75}) {
      const double a = lo + t * (r.alpha1_plus - lo);
      if (a <= lo || a >= r.alpha1_plus) continue;
      if (boundary_distance(6, kBeta, a, g) < 1e-3) continue;
      const SampleOutcome o = compare_sample({a, kBeta, g, 6});
      EXPECT_TRUE(o.agree) << o.diagnostic;
      EXPECT_EQ(o.census.even, 6) << "g=" << g << " a=" << a;
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Prediction, AgreesWithNumericalCensus) {
  for (int n = 3; n <= 6; ++n) {
    VerifyOptions o;
    o.n = n;
    o.samples = 60;
    o.seed = 100 + n;
    const VerifyReport r = verify_closed_form(o);
    EXPECT_TRUE(r.passed()) << "n=" << n << " " << (r.failures.empty() ? "" : r.failures.front().diagnostic);
    EXPECT_LT(r.max_radius_error, 1e-8);
    EXPECT_LT(r.max_angle_error, 1e-8);
  }
}

TEST(Verify, DeterministicForSeed) {
  VerifyOptions o;
  o.n = 3;
  o.samples = 20;
  o.seed = 9;
  const VerifyReport a = verify_closed_form(o), b = verify_closed_form(o);
  EXPECT_EQ(a.agreed, b.agreed);
  EXPECT_EQ(a.with_saddles, b.with_saddles);
  EXPECT_EQ(a.max_radius_error, b.max_radius_error);
}

TEST(Verify, RejectsEmptyRun) {
  VerifyOptions o;
  o.samples = 0;
  EXPECT_THROW(verify_closed_form(o), ValidationError);
}

TEST(Intervals, AdmissibleGammaAtZeroDefocus) {
  const double expected[] = {2.5, 0.76, 0.45, 0.44};
  const double tol[] = {0.05, 0.02, 0.01, 0.01};
  for (int n = 3; n <= 6; ++n) {
    const GammaInterval iv = admissible_gamma_interval(n, 0.2, 0.0);
    ASSERT_FALSE(iv.empty);
    EXPECT_NEAR(iv.hi, expected[n - 3], tol[n - 3]) << "n=" << n;
    EXPECT_NEAR(iv.lo, -expected[n - 3], tol[n - 3]) << "n=" << n;
  }
}

TEST(Intervals, FourFoldEndpointIsRimCrossing) {
  // alpha1-(gamma) = 0 at beta = 0.2 has the positive root 0.7727...
  const double g = oracle::bisect([](double x) { return region_parameters(4, 0.2, x).alpha1_minus; }, 0.3, 1.5);
  EXPECT_NEAR(admissible_gamma_interval(4, 0.2, 0.0).hi, g, 1e-6);
}

TEST(SphericalEquivalent, Values) {
  EXPECT_EQ(spherical_equivalent(0.0, 3.5), 0.0);
  EXPECT_NEAR(spherical_equivalent(0.2, 3.5), 4.0 * std::sqrt(3.0) * 0.2 / 12.25, 1e-15);
  EXPECT_NEAR(spherical_equivalent(0.2, 3.5), 0.1131135, 1e-6);
  EXPECT_NEAR(spherical_equivalent(0.2, 1.5), 0.615840, 1e-6);
}

TEST(RegionDiagram, FourFoldVerticalsAndCurves) {
  const RegionDiagram d = region_diagram(4, kBeta, default_window(4, kBeta), 11);
  EXPECT_EQ(d.gamma_samples, 11);
  EXPECT_EQ(d.alpha_samples, 11);
  EXPECT_EQ(d.grid.size(), 121u);
  bool has_plus = false, has_minus = false;
  for (const auto& c : d.boundary_curves) {
    has_plus |= c.name == "alpha1+";
    has_minus |= c.name == "alpha1-";
  }
  EXPECT_TRUE(has_plus && has_minus);
  bool tick = false;
  for (const auto& t : d.ticks) tick |= t.axis == Tick::Axis::Gamma && std::abs(t.value - std::sqrt(2.0) * kBeta) < 1e-12;
  EXPECT_TRUE(tick);
}

TEST(RegionDiagram, GridIsAlphaMajor) {
  const RegionDiagram d = region_diagram(3, kBeta, default_window(3, kBeta), 5);
  EXPECT_DOUBLE_EQ(d.grid[0].alpha, d.grid[4].alpha);
  EXPECT_LT(d.grid[0].gamma, d.grid[1].gamma);
  EXPECT_LT(d.grid[0].alpha, d.grid[5].alpha);
  for (const auto& c : d.grid) EXPECT_EQ(c.count, predict_saddles({c.alpha, kBeta, c.gamma, 3}).count);
}

TEST(RegionDiagram, DegenerateWindow) {
  const RegionDiagram d = region_diagram(4, kBeta, {0.1, 0.1, 0.0, 0.0}, 50);
  EXPECT_EQ(d.grid.size(), 1u);
  EXPECT_TRUE(d.boundary_curves.empty());
}

TEST(RegionDiagram, RejectsBadInput) {
  EXPECT_THROW(region_diagram(4, kBeta, default_window(4, kBeta), 1), ValidationError);
  EXPECT_THROW(region_diagram(4, -1.0, default_window(4, kBeta), 11), ValidationError);
  EXPECT_THROW(region_diagram(8, kBeta, default_window(4, kBeta), 11), CapabilityError);
}
