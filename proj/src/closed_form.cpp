#include "starburst/closed_form.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "starburst/errors.hpp"

namespace starburst {
namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt10 = std::sqrt(10.0);
const double kSqrt15 = std::sqrt(15.0);

void require_supported(int n) {
  if (n < 3 || n > 6) throw CapabilityError("closed forms are available for n in {3, 4, 5, 6}, got " + std::to_string(n));
}

void require_positive_beta(double beta) {
  if (!(beta > 0.0)) {
    throw ValidationError("region predicates assume beta > 0 (coefficient of Z_4^0), got " + std::to_string(beta));
  }
}

double sign_of(Family f) { return f == Family::Even ? 1.0 : -1.0; }

double polish(const ABFunctions& ab, Family f, double rho) {
  for (int k = 0; k < 2; ++k) {
    const double d = ab.combined_prime(f, rho);
    if (d == 0.0) break;
    const double next = rho - ab.combined(f, rho) / d;
    if (!(std::abs(ab.combined(f, next)) < std::abs(ab.combined(f, rho)))) break;
    rho = next;
  }
  return rho;
}

void keep_in_unit_interval(std::vector<double>& roots) {
  std::erase_if(roots, [](double r) { return !(r > 0.0 && r < 1.0); });
  std::sort(roots.begin(), roots.end());
}

std::vector<double> explicit_radii(const ABParams& p, Family f) {
  std::vector<double> out;
  const double beta = p.beta;
  const double gamma = p.gamma;
  if (p.n == 3) {
    const double disc = 32.0 * beta * (15.0 * beta - kSqrt15 * p.alpha) + 33.0 * gamma * gamma;
    if (disc < 0.0) return out;
    const double lead = f == Family::Even ? 3.0 * gamma : -3.0 * gamma;
    const double denom = 12.0 * kSqrt10 * beta;
    out = {(lead + std::sqrt(disc)) / denom, (lead - std::sqrt(disc)) / denom};
  } else if (p.n == 4) {
    const double pm = f == Family::Even ? -1.0 : 1.0;
    const double denom = 6.0 * beta * beta + pm * 2.0 * kSqrt2 * beta * gamma - gamma * gamma;
    if (denom == 0.0) return out;
    const double ratio = beta * (15.0 * beta - kSqrt15 * p.alpha) / denom;
    if (ratio > 0.0) out = {std::sqrt(2.0 / 15.0) * std::sqrt(ratio)};
  }
  keep_in_unit_interval(out);
  return out;
}

// ---- region table ---------------------------------------------------------

struct Condition {
  double value;
  double bound;
  bool greater; // value > bound (or >= when !strict)
  bool strict = true;

  double margin() const { return greater ? value - bound : bound - value; }
  double scale(double beta) const { return std::max({std::abs(value), std::abs(bound), beta}); }
};

struct Row {
  Family family;
  std::string label;
  std::vector<Condition> conditions;
};

Condition gt(double v, double b) { return {v, b, true}; }
Condition lt(double v, double b) { return {v, b, false}; }
Condition ge(double v, double b) { return {v, b, true, false}; }
Condition le(double v, double b) { return {v, b, false, false}; }

std::vector<Row> region_rows(const ABParams& p) {
  const double a = p.alpha;
  const double b = p.beta;
  const double g = p.gamma;
  const double s15b = kSqrt15 * b;
  const RegionParameters r = region_parameters(p.n, b, g);
  switch (p.n) {
  case 3: {
    const double g0 = 4.0 * kSqrt10 * b;
    return {
        {Family::Even, "gamma<0, alpha1+<alpha<alpha2", {lt(g, 0), gt(a, r.alpha1_plus), lt(a, r.alpha2)}},
        {Family::Even, "0<gamma<4sqrt10 beta, alpha2<alpha<alpha3", {gt(g, 0), lt(g, g0), gt(a, r.alpha2), lt(a, r.alpha3)}},
        {Family::Even, "gamma>4sqrt10 beta, alpha2<alpha<alpha1+", {gt(g, g0), gt(a, r.alpha2), lt(a, r.alpha1_plus)}},
        {Family::Odd, "gamma>0, alpha1-<alpha<alpha2", {gt(g, 0), gt(a, r.alpha1_minus), lt(a, r.alpha2)}},
        {Family::Odd, "-4sqrt10 beta<gamma<0, alpha2<alpha<alpha3", {gt(g, -g0), lt(g, 0), gt(a, r.alpha2), lt(a, r.alpha3)}},
        {Family::Odd, "gamma<-4sqrt10 beta, alpha2<alpha<alpha1-", {lt(g, -g0), gt(a, r.alpha2), lt(a, r.alpha1_minus)}},
    };
  }
  case 4: {
    const double g1 = kSqrt2 * b;
    const double g3 = 3.0 * kSqrt2 * b;
    return {
        {Family::Even, "-3sqrt2 beta<gamma<0, alpha1+<alpha<sqrt15 beta", {gt(g, -g3), lt(g, 0), gt(a, r.alpha1_plus), lt(a, s15b)}},
        {Family::Even, "gamma>sqrt2 beta, sqrt15 beta<alpha<alpha1+", {gt(g, g1), gt(a, s15b), lt(a, r.alpha1_plus)}},
        {Family::Odd, "0<gamma<3sqrt2 beta, alpha1-<alpha<sqrt15 beta", {gt(g, 0), lt(g, g3), gt(a, r.alpha1_minus), lt(a, s15b)}},
        {Family::Odd, "gamma<-sqrt2 beta, sqrt15 beta<alpha<alpha1-", {lt(g, -g1), gt(a, s15b), lt(a, r.alpha1_minus)}},
    };
  }
  case 5: {
    const double g1p = r.gamma1_plus;
    const double g1m = r.gamma1_minus;
    return {
        {Family::Odd, "gamma<-gamma1-, sqrt15 beta-alpha2-<alpha<alpha1-", {lt(g, -g1m), gt(a, s15b - r.alpha2_minus), lt(a, r.alpha1_minus)}},
        {Family::Odd, "0<gamma<gamma1+, alpha1-<alpha<sqrt15 beta", {gt(g, 0), lt(g, g1p), gt(a, r.alpha1_minus), lt(a, s15b)}},
        {Family::Odd, "gamma>gamma1+, sqrt15 beta-alpha2+<alpha<sqrt15 beta", {gt(g, g1p), gt(a, s15b - r.alpha2_plus), lt(a, s15b)}},
        {Family::Even, "gamma<-gamma1+, sqrt15 beta-alpha2+<alpha<sqrt15 beta", {lt(g, -g1p), gt(a, s15b - r.alpha2_plus), lt(a, s15b)}},
        {Family::Even, "-gamma1+<gamma<0, alpha1+<alpha<sqrt15 beta", {gt(g, -g1p), lt(g, 0), gt(a, r.alpha1_plus), lt(a, s15b)}},
        {Family::Even, "gamma>gamma1-, sqrt15 beta-alpha2-<alpha<alpha1+", {gt(g, g1m), gt(a, s15b - r.alpha2_minus), lt(a, r.alpha1_plus)}},
    };
  }
  case 6: {
    const double g1p = r.gamma1_plus;
    const double g1m = r.gamma1_minus;
    return {
        {Family::Odd, "gamma<-gamma1-, sqrt15 beta+alpha2-<alpha<alpha1-", {lt(g, -g1m), gt(a, s15b + r.alpha2_minus), lt(a, r.alpha1_minus)}},
        {Family::Odd, "0<gamma<gamma1+, alpha1-<alpha<sqrt15 beta", {gt(g, 0), lt(g, g1p), gt(a, r.alpha1_minus), lt(a, s15b)}},
        {Family::Odd, "gamma>=gamma1+, sqrt15 beta-alpha2+<alpha<sqrt15 beta", {ge(g, g1p), gt(a, s15b - r.alpha2_plus), lt(a, s15b)}},
        {Family::Even, "gamma>gamma1-, sqrt15 beta-alpha2-<alpha<alpha1+", {gt(g, g1m), gt(a, s15b - r.alpha2_minus), lt(a, r.alpha1_plus)}},
        {Family::Even, "-gamma1+<gamma<0, alpha1+<alpha<sqrt15 beta", {gt(g, -g1p), lt(g, 0), gt(a, r.alpha1_plus), lt(a, s15b)}},
        {Family::Even, "gamma<=-gamma1+, sqrt15 beta+alpha2+<alpha<sqrt15 beta", {le(g, -g1p), gt(a, s15b + r.alpha2_plus), lt(a, s15b)}},
    };
  }
  default:
    require_supported(p.n);
  }
  return {};
}

bool satisfied(const Condition& c) { return c.strict ? c.margin() > 0.0 : c.margin() >= 0.0; }

// All conditions hold up to tolerance and at least one sits on its bound.
bool touches(const Row& row, double beta) {
  bool on_bound = false;
  for (const auto& c : row.conditions) {
    const double tol = 1e-12 * c.scale(beta);
    if (c.margin() < -tol) return false;
    if (std::abs(c.margin()) <= tol) on_bound = true;
  }
  return on_bound;
}

} // namespace

const char* to_string(Family f) { return f == Family::Even ? "even" : "odd"; }

std::vector<double> family_angles(Family f, int n) {
  std::vector<double> out;
  const double offset = f == Family::Even ? 0.0 : std::numbers::pi / n;
  for (int k = 0; k < n; ++k) out.push_back(offset + 2.0 * std::numbers::pi * k / n);
  return out;
}

ABFunctions::ABFunctions(const ABParams& p) : p_(p) {
  require_supported(p.n);
  const int n = p.n;
  a0_ = 192.0 * p.beta * (kSqrt15 * p.alpha - 15.0 * p.beta);
  a2_ = 8640.0 * p.beta * p.beta;
  ag_ = p.gamma * p.gamma * (n - 2) * (n - 1) * (n - 1) * n * n * (n + 1);
  bcoef_ = 12.0 * kSqrt10 * p.beta * p.gamma * (n - 1) * n * n * std::sqrt(n + 1.0);
}

double ABFunctions::a(double rho) const { return a0_ + a2_ * rho * rho - ag_ * std::pow(rho, 2 * p_.n - 6); }

double ABFunctions::b(double rho) const { return bcoef_ * std::pow(rho, p_.n - 2); }

double ABFunctions::a_prime(double rho) const {
  const int k = 2 * p_.n - 6;
  return 2.0 * a2_ * rho - (k == 0 ? 0.0 : ag_ * k * std::pow(rho, k - 1));
}

double ABFunctions::b_prime(double rho) const { return bcoef_ * (p_.n - 2) * std::pow(rho, p_.n - 3); }

double ABFunctions::combined(Family f, double rho) const { return a(rho) - sign_of(f) * b(rho); }

double ABFunctions::combined_prime(Family f, double rho) const { return a_prime(rho) - sign_of(f) * b_prime(rho); }

std::vector<double> ABFunctions::combined_coefficients(Family f) const {
  const int n = p_.n;
  std::vector<double> c(static_cast<std::size_t>(std::max({2, 2 * n - 6, n - 2}) + 1), 0.0);
  c[0] += a0_;
  c[2] += a2_;
  c[static_cast<std::size_t>(2 * n - 6)] -= ag_;
  c[static_cast<std::size_t>(n - 2)] -= sign_of(f) * bcoef_;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

ABFunctions ab_functions(const ABParams& p) { return ABFunctions(p); }

bool is_saddle_root(const ABFunctions& ab, Family f, double rho) {
  return sign_of(f) * ab.b(rho) * ab.combined_prime(f, rho) < 0.0;
}

std::vector<double> real_polynomial_roots(std::span<const double> ascending, double imag_tolerance) {
  std::size_t degree = ascending.size();
  while (degree > 0 && ascending[degree - 1] == 0.0) --degree;
  if (degree <= 1) return {};
  const int d = static_cast<int>(degree - 1);
  const double lead = ascending[degree - 1];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -ascending[static_cast<std::size_t>(k)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> out;
  for (int k = 0; k < d; ++k) {
    const auto z = solver.eigenvalues()[k];
    if (std::abs(z.imag()) < imag_tolerance) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> companion_radii(const ABParams& p, Family f) {
  const ABFunctions ab(p);
  std::vector<double> coeffs = ab.combined_coefficients(f);
  std::vector<double> out;
  const bool even_powers = std::all_of(coeffs.begin(), coeffs.end(), [&, k = 0](double c) mutable {
    return (k++ % 2 == 0) || c == 0.0;
  });
  if (even_powers) {
    // polynomial in t = rho^2
    std::vector<double> in_t;
    for (std::size_t k = 0; k < coeffs.size(); k += 2) in_t.push_back(coeffs[k]);
    for (double t : real_polynomial_roots(in_t)) {
      if (t > 0.0) out.push_back(std::sqrt(t));
    }
  } else {
    out = real_polynomial_roots(coeffs);
  }
  for (double& r : out) r = polish(ab, f, r);
  keep_in_unit_interval(out);
  return out;
}

SaddleRadii saddle_radii(const ABParams& p) {
  require_supported(p.n);
  require_positive_beta(p.beta);
  const ABFunctions ab(p);
  SaddleRadii out;
  if (p.gamma == 0.0) {
    out.non_generic = true;
    for (double r : companion_radii(p, Family::Even)) {
      out.even.push_back({r, Family::Even, false});
      out.odd.push_back({r, Family::Odd, false});
    }
    return out;
  }
  for (Family f : {Family::Even, Family::Odd}) {
    const std::vector<double> radii = p.n <= 4 ? explicit_radii(p, f) : companion_radii(p, f);
    auto& dest = f == Family::Even ? out.even : out.odd;
    for (double r : radii) dest.push_back({r, f, is_saddle_root(ab, f, r)});
  }
  return out;
}

RegionParameters region_parameters(int n, double beta, double gamma) {
  require_supported(n);
  RegionParameters r;
  const double b = beta;
  const double g = gamma;
  switch (n) {
  case 3:
    r.alpha1_plus = (-120.0 * b * b + 9.0 * kSqrt10 * b * g + 3.0 * g * g) / (4.0 * kSqrt15 * b);
    r.alpha1_minus = (-120.0 * b * b - 9.0 * kSqrt10 * b * g + 3.0 * g * g) / (4.0 * kSqrt15 * b);
    r.alpha2 = (60.0 * b * b + 3.0 * g * g) / (4.0 * kSqrt15 * b);
    r.alpha3 = (480.0 * b * b + 33.0 * g * g) / (32.0 * kSqrt15 * b);
    break;
  case 4:
    r.alpha1_plus = (-60.0 * b * b + 30.0 * kSqrt2 * b * g + 15.0 * g * g) / (2.0 * kSqrt15 * b);
    r.alpha1_minus = (-60.0 * b * b - 30.0 * kSqrt2 * b * g + 15.0 * g * g) / (2.0 * kSqrt15 * b);
    break;
  case 5: {
    const double s89 = std::sqrt(89.0);
    r.alpha1_plus = (-60.0 * b * b + 25.0 * kSqrt15 * b * g + 75.0 * g * g) / (2.0 * kSqrt15 * b);
    r.alpha1_minus = (-60.0 * b * b - 25.0 * kSqrt15 * b * g + 75.0 * g * g) / (2.0 * kSqrt15 * b);
    r.alpha2_plus = 9.0 * (4561.0 + 445.0 * s89) * b * b * b / (1024.0 * kSqrt15 * g * g);
    r.alpha2_minus = 9.0 * (4561.0 - 445.0 * s89) * b * b * b / (1024.0 * kSqrt15 * g * g);
    r.gamma1_plus = kSqrt15 * (s89 + 5.0) * b / 40.0;
    r.gamma1_minus = kSqrt15 * (s89 - 5.0) * b / 40.0;
    break;
  }
  case 6: {
    const double s70 = std::sqrt(70.0);
    r.alpha1_plus = (-120.0 * b * b + 45.0 * s70 * b * g + 525.0 * g * g) / (4.0 * kSqrt15 * b);
    r.alpha1_minus = (-120.0 * b * b - 45.0 * s70 * b * g + 525.0 * g * g) / (4.0 * kSqrt15 * b);
    r.alpha2_plus = b * b / g * std::sqrt(2.0 / 7.0) * (9.0 + 4.0 * std::sqrt(3.0));
    r.alpha2_minus = b * b / g * std::sqrt(2.0 / 7.0) * (9.0 - 4.0 * std::sqrt(3.0));
    r.gamma1_plus = b * (std::sqrt(210.0) + s70) / 35.0;
    r.gamma1_minus = b * (std::sqrt(210.0) - s70) / 35.0;
    break;
  }
  default:
    break;
  }
  return r;
}

SaddlePrediction predict_saddles(const ABParams& p) {
  require_supported(p.n);
  require_positive_beta(p.beta);
  SaddlePrediction out;
  out.n = p.n;
  if (p.gamma == 0.0) {
    out.non_generic = true;
    out.region_label = "gamma=0 (axially symmetric, non-generic)";
    return out;
  }

  std::vector<std::string> labels;
  for (const Row& row : region_rows(p)) {
    if (touches(row, p.beta)) out.boundary = true;
    if (!std::all_of(row.conditions.begin(), row.conditions.end(), satisfied)) continue;
    (row.family == Family::Even ? out.even_present : out.odd_present) = true;
    labels.push_back(std::string(to_string(row.family)) + ": " + row.label);
  }
  out.count = p.n * ((out.even_present ? 1 : 0) + (out.odd_present ? 1 : 0));
  if (labels.empty()) {
    out.region_label = "none";
  } else {
    out.region_label = labels.front();
    for (std::size_t k = 1; k < labels.size(); ++k) out.region_label += " + " + labels[k];
  }

  const SaddleRadii radii = saddle_radii(p);
  for (Family f : {Family::Even, Family::Odd}) {
    const bool present = f == Family::Even ? out.even_present : out.odd_present;
    int saddles = 0;
    for (const auto& root : radii.of(f)) {
      if (!root.saddle) continue;
      ++saddles;
      if (present) out.rings.push_back({root.rho, f, family_angles(f, p.n)});
    }
    if ((present && saddles != 1) || (!present && saddles != 0)) out.rings_consistent = false;
  }
  std::sort(out.rings.begin(), out.rings.end(), [](const Ring& a, const Ring& b) { return a.rho < b.rho; });
  return out;
}

Window default_window(int n, double beta) {
  require_supported(n);
  switch (n) {
  case 3:
    return {-20.0 * beta, 20.0 * beta, -15.0 * beta, 120.0 * beta};
  case 4:
    return {-4.5 * beta, 4.5 * beta, -12.0 * beta, 65.0 * beta};
  case 5:
    return {-2.5 * beta, 2.5 * beta, -12.0 * beta, 9.0 * beta};
  default:
    return {-2.5 * beta, 2.5 * beta, -14.0 * beta, 13.0 * beta};
  }
}

namespace {

struct BoundarySet {
  std::vector<double> verticals;
  std::vector<double> curve_values; // alpha values of every curve at the given gamma
};

BoundarySet boundaries_at(int n, double beta, double gamma) {
  BoundarySet out;
  const RegionParameters r = region_parameters(n, beta, gamma);
  const double s15b = kSqrt15 * beta;
  out.verticals.push_back(0.0);
  switch (n) {
  case 3:
    out.verticals.insert(out.verticals.end(), {4.0 * kSqrt10 * beta, -4.0 * kSqrt10 * beta});
    out.curve_values = {r.alpha1_plus, r.alpha1_minus, r.alpha2, r.alpha3};
    break;
  case 4:
    out.verticals.insert(out.verticals.end(),
                         {kSqrt2 * beta, -kSqrt2 * beta, 3.0 * kSqrt2 * beta, -3.0 * kSqrt2 * beta});
    out.curve_values = {r.alpha1_plus, r.alpha1_minus, s15b};
    break;
  default:
    out.verticals.insert(out.verticals.end(), {r.gamma1_plus, -r.gamma1_plus, r.gamma1_minus, -r.gamma1_minus});
    out.curve_values = {r.alpha1_plus, r.alpha1_minus, s15b};
    if (gamma != 0.0) {
      if (n == 5) {
        out.curve_values.insert(out.curve_values.end(), {s15b - r.alpha2_plus, s15b - r.alpha2_minus});
      } else {
        // alpha2 is odd in gamma; the table uses sqrt15 beta -/+ alpha2 on either side
        out.curve_values.insert(out.curve_values.end(), {s15b - std::abs(r.alpha2_plus), s15b - std::abs(r.alpha2_minus)});
      }
    }
    break;
  }
  return out;
}

} // namespace

double boundary_distance(int n, double beta, double alpha, double gamma) {
  const BoundarySet b = boundaries_at(n, beta, gamma);
  double d = std::numeric_limits<double>::infinity();
  for (double v : b.verticals) d = std::min(d, std::abs(gamma - v) / beta);
  for (double c : b.curve_values) d = std::min(d, std::abs(alpha - c) / beta);
  return d;
}

const char* to_string(FamilyPresence f) {
  switch (f) {
  case FamilyPresence::None:
    return "none";
  case FamilyPresence::Even:
    return "even";
  case FamilyPresence::Odd:
    return "odd";
  case FamilyPresence::Both:
    return "both";
  }
  return "none";
}

namespace {

void add_curve(RegionDiagram& d, const std::string& name, double g_from, double g_to,
               const std::function<double(double)>& alpha_of_gamma) {
  const Window& w = d.window;
  const double lo = std::max(g_from, w.gamma_lo);
  const double hi = std::min(g_to, w.gamma_hi);
  if (!(hi > lo)) return;
  constexpr int kSamples = 800;
  NamedPolyline piece{name, {}};
  auto flush = [&] {
    if (piece.points.size() >= 2) d.boundary_curves.push_back(piece);
    piece.points.clear();
  };
  for (int k = 0; k <= kSamples; ++k) {
    const double g = lo + (hi - lo) * k / kSamples;
    const double a = alpha_of_gamma(g);
    if (std::isfinite(a) && a >= w.alpha_lo && a <= w.alpha_hi) {
      piece.points.push_back({g, a});
    } else {
      flush();
    }
  }
  flush();
}

void add_vertical(RegionDiagram& d, const std::string& name, double g) {
  const Window& w = d.window;
  if (g < w.gamma_lo || g > w.gamma_hi || !(w.alpha_hi > w.alpha_lo)) return;
  d.boundary_curves.push_back({name, {{g, w.alpha_lo}, {g, w.alpha_hi}}});
}

void add_horizontal(RegionDiagram& d, const std::string& name, double a) {
  const Window& w = d.window;
  if (a < w.alpha_lo || a > w.alpha_hi || !(w.gamma_hi > w.gamma_lo)) return;
  d.boundary_curves.push_back({name, {{w.gamma_lo, a}, {w.gamma_hi, a}}});
}

} // namespace

RegionDiagram region_diagram(int n, double beta, const Window& window, int resolution) {
  require_supported(n);
  require_positive_beta(beta);
  if (resolution < 2) throw ValidationError("region diagram resolution must be at least 2");
  RegionDiagram d;
  d.n = n;
  d.beta = beta;
  d.window = window;

  const double inf = std::numeric_limits<double>::infinity();
  const double s15b = kSqrt15 * beta;
  auto param = [n, beta](double g) { return region_parameters(n, beta, g); };
  auto sym_vertical = [&](const std::string& name, double g) {
    add_vertical(d, name, g);
    add_vertical(d, "-" + name, -g);
  };

  switch (n) {
  case 3:
    add_curve(d, "alpha1+", -inf, inf, [&](double g) { return param(g).alpha1_plus; });
    add_curve(d, "alpha1-", -inf, inf, [&](double g) { return param(g).alpha1_minus; });
    add_curve(d, "alpha2", -inf, inf, [&](double g) { return param(g).alpha2; });
    add_curve(d, "alpha3", -inf, inf, [&](double g) { return param(g).alpha3; });
    sym_vertical("4sqrt10 beta", 4.0 * kSqrt10 * beta);
    d.ticks = {{Tick::Axis::Gamma, 4.0 * kSqrt10 * beta, "4√10β"},
               {Tick::Axis::Gamma, -4.0 * kSqrt10 * beta, "−4√10β"},
               {Tick::Axis::Alpha, -2.0 * s15b, "−2√15β"},
               {Tick::Axis::Alpha, s15b, "√15β"},
               {Tick::Axis::Alpha, 12.0 * s15b, "12√15β"}};
    break;
  case 4: {
    add_curve(d, "alpha1+", -inf, inf, [&](double g) { return param(g).alpha1_plus; });
    add_curve(d, "alpha1-", -inf, inf, [&](double g) { return param(g).alpha1_minus; });
    add_horizontal(d, "sqrt15 beta", s15b);
    const double g38 = (kSqrt2 + std::sqrt(6.0)) * beta;
    sym_vertical("sqrt2 beta", kSqrt2 * beta);
    sym_vertical("3sqrt2 beta", 3.0 * kSqrt2 * beta);
    sym_vertical("(sqrt2+sqrt6) beta", g38);
    d.ticks = {{Tick::Axis::Gamma, kSqrt2 * beta, "√2β"},
               {Tick::Axis::Gamma, -kSqrt2 * beta, "−√2β"},
               {Tick::Axis::Gamma, 3.0 * kSqrt2 * beta, "3√2β"},
               {Tick::Axis::Gamma, -3.0 * kSqrt2 * beta, "−3√2β"},
               {Tick::Axis::Gamma, g38, "3.8β"},
               {Tick::Axis::Gamma, -g38, "−3.8β"},
               {Tick::Axis::Alpha, s15b, "√15β"}};
    break;
  }
  default: {
    add_curve(d, "alpha1+", -inf, inf, [&](double g) { return param(g).alpha1_plus; });
    add_curve(d, "alpha1-", -inf, inf, [&](double g) { return param(g).alpha1_minus; });
    add_horizontal(d, "sqrt15 beta", s15b);
    if (n == 5) {
      add_curve(d, "sqrt15 beta-alpha2+", -inf, 0.0, [&](double g) { return s15b - param(g).alpha2_plus; });
      add_curve(d, "sqrt15 beta-alpha2+", 0.0, inf, [&](double g) { return s15b - param(g).alpha2_plus; });
      add_curve(d, "sqrt15 beta-alpha2-", -inf, 0.0, [&](double g) { return s15b - param(g).alpha2_minus; });
      add_curve(d, "sqrt15 beta-alpha2-", 0.0, inf, [&](double g) { return s15b - param(g).alpha2_minus; });
    } else {
      add_curve(d, "sqrt15 beta+alpha2+", -inf, 0.0, [&](double g) { return s15b + param(g).alpha2_plus; });
      add_curve(d, "sqrt15 beta-alpha2+", 0.0, inf, [&](double g) { return s15b - param(g).alpha2_plus; });
      add_curve(d, "sqrt15 beta+alpha2-", -inf, 0.0, [&](double g) { return s15b + param(g).alpha2_minus; });
      add_curve(d, "sqrt15 beta-alpha2-", 0.0, inf, [&](double g) { return s15b - param(g).alpha2_minus; });
    }
    const RegionParameters r = param(beta);
    sym_vertical("gamma1+", r.gamma1_plus);
    sym_vertical("gamma1-", r.gamma1_minus);
    // gamma at which sqrt15 beta - alpha2+ crosses alpha = 0
    const double g_zero = n == 5 ? beta * std::sqrt(9.0 * (4561.0 + 445.0 * std::sqrt(89.0)) / (1024.0 * 15.0))
                                 : beta * std::sqrt(2.0 / 7.0) * (9.0 + 4.0 * std::sqrt(3.0)) / kSqrt15;
    const std::string zero_label = n == 5 ? "2.26β" : "2.2β";
    d.ticks = {{Tick::Axis::Gamma, r.gamma1_plus, "γ₁⁺"},
               {Tick::Axis::Gamma, -r.gamma1_plus, "−γ₁⁺"},
               {Tick::Axis::Gamma, r.gamma1_minus, "γ₁⁻"},
               {Tick::Axis::Gamma, -r.gamma1_minus, "−γ₁⁻"},
               {Tick::Axis::Gamma, g_zero, zero_label},
               {Tick::Axis::Gamma, -g_zero, "−" + zero_label},
               {Tick::Axis::Alpha, s15b, "√15β"}};
    break;
  }
  }

  const bool flat_gamma = !(window.gamma_hi > window.gamma_lo);
  const bool flat_alpha = !(window.alpha_hi > window.alpha_lo);
  d.gamma_samples = flat_gamma ? 1 : resolution;
  d.alpha_samples = flat_alpha ? 1 : resolution;
  if (flat_gamma || flat_alpha) {
    // a degenerate window shows no boundary curves
    d.boundary_curves.clear();
  }
  for (int j = 0; j < d.alpha_samples; ++j) {
    const double a = flat_alpha ? window.alpha_lo
                                : window.alpha_lo + (window.alpha_hi - window.alpha_lo) * j / (d.alpha_samples - 1);
    for (int i = 0; i < d.gamma_samples; ++i) {
      const double g = flat_gamma ? window.gamma_lo
                                  : window.gamma_lo + (window.gamma_hi - window.gamma_lo) * i / (d.gamma_samples - 1);
      const SaddlePrediction pred = predict_saddles({a, beta, g, n});
      RegionCell cell{g, a, pred.count, FamilyPresence::None, pred.boundary};
      if (pred.even_present && pred.odd_present) {
        cell.presence = FamilyPresence::Both;
      } else if (pred.even_present) {
        cell.presence = FamilyPresence::Even;
      } else if (pred.odd_present) {
        cell.presence = FamilyPresence::Odd;
      }
      d.grid.push_back(cell);
    }
  }
  return d;
}

GammaInterval admissible_gamma_interval(int n, double beta, double alpha) {
  require_supported(n);
  require_positive_beta(beta);
  auto has_saddles = [&](double g) { return predict_saddles({alpha, beta, g, n}).count > 0; };

  // Scan inwards from well outside every published window and bisect the
  // outermost transition on each side.
  const double reach = 40.0 * beta;
  const double step = 1e-3 * beta;
  const int steps = static_cast<int>(std::lround(reach / step));
  auto outermost = [&](double direction) -> double {
    double outside = direction * reach;
    for (int k = steps - 1; k >= 1; --k) {
      const double g = direction * k * step;
      if (has_saddles(g)) {
        double in = g;
        double out = outside;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (in + out);
          (has_saddles(mid) ? in : out) = mid;
        }
        return in;
      }
      outside = g;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  GammaInterval out;
  const double hi = outermost(1.0);
  const double lo = outermost(-1.0);
  if (std::isnan(hi) && std::isnan(lo)) return out;
  out.empty = false;
  out.hi = std::isnan(hi) ? lo : hi;
  out.lo = std::isnan(lo) ? hi : lo;
  if (out.lo > out.hi) std::swap(out.lo, out.hi);
  return out;
}

double spherical_equivalent(double alpha, double pupil_radius_mm) {
  if (!(pupil_radius_mm > 0.0)) throw ValidationError("pupil radius must be positive");
  return 4.0 * std::sqrt(3.0) * alpha / (pupil_radius_mm * pupil_radius_mm);
}

} // namespace starburst
