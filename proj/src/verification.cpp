#include "starburst/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "starburst/errors.hpp"

namespace starburst {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed distance from theta to the nearest multiple of period, in (-period/2, period/2].
double lattice_offset(double theta, double period) {
  double r = std::fmod(theta, period);
  if (r < 0.0) r += period;
  if (r > 0.5 * period) r -= period;
  return r;
}

std::string describe(const SampleOutcome& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "alpha=%.9g gamma=%.9g: predicted %d (%s), numerical %d (even %d, odd %d, off-lattice %d)",
                s.params.alpha, s.params.gamma, s.prediction.count, s.prediction.region_label.c_str(),
                s.census.total, s.census.even, s.census.odd, s.census.unassigned);
  return buf;
}

} // namespace

SaddleCensus saddle_census(const ABParams& p, const SolverOptions& opts) {
  const WaveAberration w = WaveAberration::from_shorthand(p.alpha, p.beta, p.gamma, p.n);
  const CriticalPointSet set = find_critical_points(build_field(w), opts);
  SaddleCensus c;
  c.degenerate_field = set.degenerate_field;
  c.saddles = set.saddles();
  c.total = static_cast<int>(c.saddles.size());

  const double period = kTwoPi / p.n;
  std::vector<std::vector<int>> hits(2, std::vector<int>(static_cast<std::size_t>(p.n), 0));
  std::vector<std::vector<double>> radii(2);
  for (const auto& s : c.saddles) {
    const double even_off = lattice_offset(s.theta, period);
    const double odd_off = lattice_offset(s.theta - 0.5 * period, period);
    const bool is_even = std::abs(even_off) <= std::abs(odd_off);
    const double off = is_even ? even_off : odd_off;
    c.max_angle_error = std::max(c.max_angle_error, std::abs(off));
    if (std::abs(off) > 1e-6) {
      ++c.unassigned;
      continue;
    }
    const int fam = is_even ? 0 : 1;
    (is_even ? c.even : c.odd) += 1;
    const double base = is_even ? s.theta : s.theta - 0.5 * period;
    const long k = std::lround((base - (is_even ? even_off : odd_off)) / period);
    hits[fam][static_cast<std::size_t>(((k % p.n) + p.n) % p.n)] += 1;
    radii[fam].push_back(s.rho);
  }
  for (int fam = 0; fam < 2; ++fam) {
    if (radii[fam].empty()) continue;
    const auto [lo, hi] = std::minmax_element(radii[fam].begin(), radii[fam].end());
    c.ring_spread = std::max(c.ring_spread, *hi - *lo);
    for (int h : hits[fam]) {
      if (h != 1) c.lattice_complete = false;
    }
  }
  return c;
}

SampleOutcome compare_sample(const ABParams& p, const SolverOptions& opts) {
  SampleOutcome s;
  s.params = p;
  s.prediction = predict_saddles(p);
  s.census = saddle_census(p, opts);

  bool ok = s.prediction.count == s.census.total && s.census.unassigned == 0 &&
            s.prediction.even_present == (s.census.even > 0) && s.prediction.odd_present == (s.census.odd > 0) &&
            s.prediction.rings_consistent && !s.census.degenerate_field;
  if (ok && s.census.total > 0) ok = s.census.lattice_complete;

  for (const Ring& ring : s.prediction.rings) {
    for (const auto& pt : s.census.saddles) {
      const double period = kTwoPi / p.n;
      const double shift = ring.family == Family::Even ? 0.0 : 0.5 * period;
      if (std::abs(lattice_offset(pt.theta - shift, period)) > 1e-6) continue;
      s.radius_error = std::max(s.radius_error, std::abs(pt.rho - ring.rho));
    }
  }
  if (s.radius_error >= 1e-8) ok = false;
  s.agree = ok;
  if (!ok) {
    s.diagnostic = describe(s);
    if (!s.prediction.rings_consistent) s.diagnostic += "; closed-form roots disagree with the region table";
    if (s.census.degenerate_field) s.diagnostic += "; numerical field flagged degenerate";
    if (s.radius_error >= 1e-8) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "; radius error %.3g", s.radius_error);
      s.diagnostic += buf;
    }
  }
  return s;
}

VerifyReport verify_closed_form(const VerifyOptions& opts) {
  if (opts.samples < 1) throw ValidationError("samples must be at least 1");
  if (!(opts.beta > 0.0)) throw ValidationError("beta must be positive");
  VerifyReport r;
  r.n = opts.n;
  r.beta = opts.beta;
  r.seed = opts.seed;
  r.window = opts.window.value_or(default_window(opts.n, opts.beta));
  r.samples = opts.samples;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < opts.samples; ++k) {
    ABParams p{0.0, opts.beta, 0.0, opts.n};
    for (;;) {
      p.gamma = r.window.gamma_lo + (r.window.gamma_hi - r.window.gamma_lo) * unit(rng);
      p.alpha = r.window.alpha_lo + (r.window.alpha_hi - r.window.alpha_lo) * unit(rng);
      if (boundary_distance(p.n, p.beta, p.alpha, p.gamma) >= opts.boundary_band) break;
      ++r.redrawn;
    }
    SampleOutcome s = compare_sample(p, opts.solver);
    if (s.census.total > 0) ++r.with_saddles;
    r.max_radius_error = std::max(r.max_radius_error, s.radius_error);
    r.max_angle_error = std::max(r.max_angle_error, s.census.max_angle_error);
    r.max_ring_spread = std::max(r.max_ring_spread, s.census.ring_spread);
    if (s.agree) {
      ++r.agreed;
    } else {
      r.failures.push_back(std::move(s));
    }
  }
  return r;
}

} // namespace starburst
