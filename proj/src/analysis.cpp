#include "starburst/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "starburst/errors.hpp"

namespace starburst {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Vec2 {
  double x;
  double y;
};

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

Vec2 gradient(const HessianField& f, double x, double y) { return {f.gx(x, y), f.gy(x, y)}; }

double gradient_floor(const HessianField& f, double x, double y) {
  return 32.0 * kEps * std::max(f.gx.magnitude(x, y), f.gy.magnitude(x, y));
}

// Solves J d = r for the symmetric 2x2 Hessian of G, falling back to the
// minimum-norm solution when J is numerically singular.
Vec2 newton_step(double a, double b, double c, Vec2 r) {
  const double det = a * c - b * b;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return {0.0, 0.0};
  if (std::abs(det) > 1e-12 * scale * scale) {
    return {(c * r.x - b * r.y) / det, (a * r.y - b * r.x) / det};
  }
  const double mean = 0.5 * (a + c);
  const double disc = std::hypot(0.5 * (a - c), b);
  const std::array<double, 2> lambda{mean + disc, mean - disc};
  Vec2 out{0.0, 0.0};
  for (double l : lambda) {
    if (std::abs(l) <= 1e-12 * scale) continue;
    // eigenvector of [[a, b], [b, c]] for eigenvalue l
    Vec2 v = std::abs(b) > 0.0 ? Vec2{b, l - a} : (std::abs(a - l) < std::abs(c - l) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0});
    const double len = norm(v);
    if (len == 0.0) continue;
    v = {v.x / len, v.y / len};
    const double proj = (v.x * r.x + v.y * r.y) / l;
    out.x += proj * v.x;
    out.y += proj * v.y;
  }
  return out;
}

struct NewtonResult {
  bool converged = false;
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0;
};

NewtonResult newton(const HessianField& f, double x, double y, const SolverOptions& opts) {
  const double escape = 2.0 * opts.domain_radius;
  Vec2 g = gradient(f, x, y);
  double gn = norm(g);
  for (int it = 0; it < opts.max_iterations && gn > 0.0; ++it) {
    const Vec2 d = newton_step(f.gxx(x, y), f.gxy(x, y), f.gyy(x, y), g);
    double t = 1.0;
    double nx = x - d.x;
    double ny = y - d.y;
    Vec2 ng = gradient(f, nx, ny);
    // damp by halves while the step overshoots
    for (int k = 0; k < 30 && norm(ng) > gn; ++k) {
      t *= 0.5;
      nx = x - t * d.x;
      ny = y - t * d.y;
      ng = gradient(f, nx, ny);
    }
    const double step = t * norm(d);
    x = nx;
    y = ny;
    g = ng;
    gn = norm(g);
    if (std::hypot(x, y) > escape) return {};
    if (step <= 1e-15 * std::max(1.0, std::hypot(x, y))) break;
  }
  NewtonResult r{false, x, y, gn};
  r.converged = gn <= std::max(opts.gradient_tolerance, gradient_floor(f, x, y));
  return r;
}

bool changes_sign(const std::array<double, 4>& v) {
  bool pos = false;
  bool neg = false;
  for (double s : v) {
    pos = pos || s >= 0.0;
    neg = neg || s <= 0.0;
  }
  return pos && neg;
}

bool both_change_sign(const HessianField& f, double x0, double y0, double h) {
  const std::array<double, 4> gx{f.gx(x0, y0), f.gx(x0 + h, y0), f.gx(x0, y0 + h), f.gx(x0 + h, y0 + h)};
  const std::array<double, 4> gy{f.gy(x0, y0), f.gy(x0 + h, y0), f.gy(x0, y0 + h), f.gy(x0 + h, y0 + h)};
  return changes_sign(gx) && changes_sign(gy);
}

// Seeds at the centre of the cell and recursively at the centres of sub-cells
// that still bracket a zero of both components.
void collect_seeds(const HessianField& f, double x0, double y0, double h, int levels, std::vector<Vec2>& seeds) {
  seeds.push_back({x0 + 0.5 * h, y0 + 0.5 * h});
  if (levels <= 0) return;
  const double half = 0.5 * h;
  for (int dj = 0; dj < 2; ++dj) {
    for (int di = 0; di < 2; ++di) {
      const double sx = x0 + di * half;
      const double sy = y0 + dj * half;
      if (both_change_sign(f, sx, sy, half)) collect_seeds(f, sx, sy, half, levels - 1, seeds);
    }
  }
}

double cell_distance_to_origin(double x0, double y0, double h) {
  const double cx = std::clamp(0.0, x0, x0 + h);
  const double cy = std::clamp(0.0, y0, y0 + h);
  return std::hypot(cx, cy);
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi - 1e-12) theta = 0.0;
  return theta;
}

} // namespace

const char* to_string(PointClass c) {
  switch (c) {
  case PointClass::Saddle:
    return "saddle";
  case PointClass::Extremum:
    return "extremum";
  case PointClass::Degenerate:
    return "degenerate";
  }
  return "unknown";
}

HessianField HessianField::from_polynomial(const Polynomial& w) {
  if (w.degree() > kMaxRadialOrder) {
    throw CapabilityError("wave aberration degree " + std::to_string(w.degree()) + " exceeds the supported maximum of " +
                          std::to_string(kMaxRadialOrder));
  }
  HessianField f;
  f.w = w;
  f.wx = w.derivative(Axis::X);
  f.wy = w.derivative(Axis::Y);
  f.wxx = f.wx.derivative(Axis::X);
  f.wxy = f.wx.derivative(Axis::Y);
  f.wyy = f.wy.derivative(Axis::Y);
  f.g = f.wxx * f.wyy - f.wxy * f.wxy;
  f.gx = f.g.derivative(Axis::X);
  f.gy = f.g.derivative(Axis::Y);
  f.gxx = f.gx.derivative(Axis::X);
  f.gxy = f.gx.derivative(Axis::Y);
  f.gyy = f.gy.derivative(Axis::Y);
  return f;
}

HessianField HessianField::build(const WaveAberration& wavefront) {
  if (wavefront.degree() > kMaxRadialOrder) {
    throw CapabilityError("wave aberration degree exceeds the supported maximum");
  }
  return from_polynomial(wavefront.polynomial());
}

std::size_t CriticalPointSet::count(PointClass c) const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [c](const auto& p) { return p.kind == c; }));
}

std::vector<CriticalPoint> CriticalPointSet::saddles() const {
  std::vector<CriticalPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [](const auto& p) { return p.kind == PointClass::Saddle; });
  return out;
}

double max_abs_g(const HessianField& field, const SolverOptions& opts) {
  const int n = opts.seed_grid;
  const double r = opts.domain_radius;
  const double h = 2.0 * r / n;
  double m = 0.0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double x = -r + i * h;
      const double y = -r + j * h;
      if (std::hypot(x, y) <= r) m = std::max(m, std::abs(field.g(x, y)));
    }
  }
  return m;
}

PointClass classify(double x, double y, const HessianField& field, double degeneracy_threshold) {
  const double det = field.gxx(x, y) * field.gyy(x, y) - field.gxy(x, y) * field.gxy(x, y);
  if (det < -degeneracy_threshold) return PointClass::Saddle;
  if (det > degeneracy_threshold) return PointClass::Extremum;
  return PointClass::Degenerate;
}

CriticalPointSet find_critical_points(const HessianField& field, const SolverOptions& opts) {
  CriticalPointSet out;
  if (field.g.degree() <= 0) {
    out.degenerate_field = true;
    out.degenerate_reason = "constant G";
    return out;
  }

  const int n = opts.seed_grid;
  const double radius = opts.domain_radius;
  const double h = 2.0 * radius / n;
  const double gmax = max_abs_g(field, opts);
  out.degeneracy_threshold = opts.degeneracy_factor * gmax * gmax / std::pow(radius, 4);

  // corner values of the gradient on the coarse grid
  const int stride = n + 1;
  std::vector<double> cgx(static_cast<std::size_t>(stride * stride));
  std::vector<double> cgy(cgx.size());
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double x = -radius + i * h;
      const double y = -radius + j * h;
      cgx[static_cast<std::size_t>(j * stride + i)] = field.gx(x, y);
      cgy[static_cast<std::size_t>(j * stride + i)] = field.gy(x, y);
    }
  }
  auto corner = [&](const std::vector<double>& v, int i, int j) { return v[static_cast<std::size_t>(j * stride + i)]; };

  std::vector<double> cell_min(static_cast<std::size_t>(n * n), std::numeric_limits<double>::infinity());
  std::vector<char> active(cell_min.size(), 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x0 = -radius + i * h;
      const double y0 = -radius + j * h;
      if (cell_distance_to_origin(x0, y0, h) > radius) continue;
      active[static_cast<std::size_t>(j * n + i)] = 1;
      double m = std::numeric_limits<double>::infinity();
      for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) m = std::min(m, std::hypot(corner(cgx, i + di, j + dj), corner(cgy, i + di, j + dj)));
      cell_min[static_cast<std::size_t>(j * n + i)] = m;
    }
  }

  std::vector<Vec2> seeds;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = static_cast<std::size_t>(j * n + i);
      if (!active[c]) continue;
      const std::array<double, 4> gx{corner(cgx, i, j), corner(cgx, i + 1, j), corner(cgx, i, j + 1), corner(cgx, i + 1, j + 1)};
      const std::array<double, 4> gy{corner(cgy, i, j), corner(cgy, i + 1, j), corner(cgy, i, j + 1), corner(cgy, i + 1, j + 1)};
      const double x0 = -radius + i * h;
      const double y0 = -radius + j * h;
      if (changes_sign(gx) && changes_sign(gy)) {
        collect_seeds(field, x0, y0, h, opts.refine_levels, seeds);
        continue;
      }
      bool local_min = true;
      for (int dj = -1; dj <= 1 && local_min; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          const int jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          if (cell_min[static_cast<std::size_t>(jj * n + ii)] < cell_min[c]) {
            local_min = false;
            break;
          }
        }
      }
      if (local_min) seeds.push_back({x0 + 0.5 * h, y0 + 0.5 * h});
    }
  }
  out.seeds = seeds.size();

  std::vector<CriticalPoint> found;
  for (const Vec2& s : seeds) {
    const NewtonResult r = newton(field, s.x, s.y, opts);
    if (!r.converged) {
      ++out.failed_seeds;
      continue;
    }
    double x = r.x;
    double y = r.y;
    double rho = std::hypot(x, y);
    bool boundary = false;
    if (rho > radius) {
      if (rho > radius * (1.0 + opts.boundary_slack)) continue;
      x *= radius / rho;
      y *= radius / rho;
      rho = radius;
      boundary = true;
    }
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const CriticalPoint& p) {
      return std::hypot(p.x - x, p.y - y) <= opts.dedup_radius;
    });
    if (duplicate) continue;

    CriticalPoint p;
    p.x = x;
    p.y = y;
    p.rho = rho;
    p.theta = rho == 0.0 ? 0.0 : wrap_angle(std::atan2(x, y));
    p.g_value = field.g(x, y);
    p.hess_g_det = field.gxx(x, y) * field.gyy(x, y) - field.gxy(x, y) * field.gxy(x, y);
    p.kind = classify(x, y, field, out.degeneracy_threshold);
    p.gradient_norm = r.residual;
    p.on_boundary = boundary;
    found.push_back(p);
  }

  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    const auto ka = std::llround(a.rho * 1e9);
    const auto kb = std::llround(b.rho * 1e9);
    if (ka != kb) return ka < kb;
    return a.theta < b.theta;
  });
  out.points = std::move(found);
  if (out.points.size() > opts.max_isolated_points) {
    out.degenerate_field = true;
    out.degenerate_reason = "non-isolated critical set";
  }
  return out;
}

int saddle_upper_bound(int degree) {
  if (degree < 3) return 0;
  return (degree - 2) * (2 * degree - 5);
}

int saddle_upper_bound(const WaveAberration& wavefront) { return saddle_upper_bound(wavefront.degree()); }

RescaleReport rescale_check(const WaveAberration& wavefront, double factor, const SolverOptions& opts) {
  if (!(factor > 0.0)) throw ValidationError("rescale factor must be positive");
  RescaleReport report;
  report.factor = factor;

  const auto original = find_critical_points(HessianField::build(wavefront), opts);
  SolverOptions scaled_opts = opts;
  scaled_opts.domain_radius = opts.domain_radius * factor;
  const auto scaled = find_critical_points(HessianField::from_polynomial(wavefront.polynomial().dilated(factor)), scaled_opts);

  report.original_count = original.points.size();
  report.scaled_count = scaled.points.size();
  if (original.degenerate_field || scaled.degenerate_field) {
    report.vacuous = original.degenerate_field && scaled.degenerate_field;
    report.passed = report.vacuous;
    report.diagnostic = report.vacuous ? "degenerate in both fields" : "degenerate in only one field";
    return report;
  }
  if (report.original_count != report.scaled_count) {
    report.diagnostic = "critical point counts differ: " + std::to_string(report.original_count) + " vs " +
                        std::to_string(report.scaled_count);
    return report;
  }

  std::vector<char> used(scaled.points.size(), 0);
  for (const auto& p : original.points) {
    std::size_t best = scaled.points.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < scaled.points.size(); ++k) {
      if (used[k]) continue;
      const double d = std::hypot(scaled.points[k].x / factor - p.x, scaled.points[k].y / factor - p.y);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (best == scaled.points.size()) {
      report.diagnostic = "unmatched critical point";
      return report;
    }
    used[best] = 1;
    report.max_position_error = std::max(report.max_position_error, best_d);
    if (scaled.points[best].kind != p.kind) {
      report.diagnostic = "class mismatch at rho=" + std::to_string(p.rho);
      return report;
    }
  }
  report.passed = report.max_position_error < 1e-8;
  if (!report.passed) report.diagnostic = "positional error " + std::to_string(report.max_position_error);
  return report;
}

} // namespace starburst
