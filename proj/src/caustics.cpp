#include "starburst/caustics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "starburst/errors.hpp"

namespace starburst {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

double angular_distance(double a, double b) {
  const double d = std::abs(wrap(a - b));
  return std::min(d, kTwoPi - d);
}

// ---- marching squares ------------------------------------------------------

struct Segment {
  long a;
  long b;
};

class Grid {
public:
  Grid(const HessianField& f, int res) : f_(f), res_(res), n_(res + 1), h_(2.0 / res), v_(static_cast<std::size_t>(n_) * n_) {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) v_[idx(i, j)] = f.g(coord(i), coord(j));
  }

  double coord(int i) const { return -1.0 + i * h_; }
  double value(int i, int j) const { return v_[idx(i, j)]; }
  double cell() const { return h_; }
  int res() const { return res_; }

  long horizontal(int i, int j) const { return 2L * (static_cast<long>(j) * n_ + i); }
  long vertical(int i, int j) const { return 2L * (static_cast<long>(j) * n_ + i) + 1; }

  // Linear zero crossing on an edge, snapped onto G = 0.
  Point2 edge_point(long id) const {
    const long node = id / 2;
    const int i = static_cast<int>(node % n_);
    const int j = static_cast<int>(node / n_);
    const int i1 = (id % 2 == 0) ? i + 1 : i;
    const int j1 = (id % 2 == 0) ? j : j + 1;
    const double va = value(i, j);
    const double vb = value(i1, j1);
    const double t = va / (va - vb);
    Point2 p{coord(i) + t * (coord(i1) - coord(i)), coord(j) + t * (coord(j1) - coord(j))};
    return snap(p);
  }

  Point2 snap(Point2 p) const {
    for (int it = 0; it < 2; ++it) {
      const double g = f_.g(p.x, p.y);
      const double gx = f_.gx(p.x, p.y);
      const double gy = f_.gy(p.x, p.y);
      const double n2 = gx * gx + gy * gy;
      if (g == 0.0 || n2 == 0.0) break;
      double sx = -g * gx / n2;
      double sy = -g * gy / n2;
      const double len = std::hypot(sx, sy);
      if (len > 0.5 * h_) {
        sx *= 0.5 * h_ / len;
        sy *= 0.5 * h_ / len;
      }
      const Point2 q{p.x + sx, p.y + sy};
      if (!(std::abs(f_.g(q.x, q.y)) < std::abs(g))) break;
      p = q;
    }
    return p;
  }

  // Point on the unit circle between an inside point a and an outside point b.
  Point2 boundary_point(Point2 a, Point2 b) const {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double qa = dx * dx + dy * dy;
    const double qb = 2.0 * (a.x * dx + a.y * dy);
    const double qc = a.x * a.x + a.y * a.y - 1.0;
    const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
    const double t = std::clamp((-qb + std::sqrt(disc)) / (2.0 * qa), 0.0, 1.0);
    double theta = std::atan2(a.x + t * dx, a.y + t * dy);
    const double theta0 = theta;
    for (int it = 0; it < 5; ++it) {
      const double s = std::sin(theta);
      const double c = std::cos(theta);
      const double g = f_.g(s, c);
      const double dg = f_.gx(s, c) * c - f_.gy(s, c) * s;
      if (g == 0.0 || dg == 0.0) break;
      const double next = theta - g / dg;
      if (std::abs(next - theta0) > h_ || !(std::abs(f_.g(std::sin(next), std::cos(next))) < std::abs(g))) break;
      theta = next;
    }
    return {std::sin(theta), std::cos(theta)};
  }

private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }

  const HessianField& f_;
  int res_;
  int n_;
  double h_;
  std::vector<double> v_;
};

std::vector<Segment> march(const HessianField& f, const Grid& grid) {
  std::vector<Segment> segs;
  const int res = grid.res();
  const double h = grid.cell();
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const double x0 = grid.coord(i);
      const double y0 = grid.coord(j);
      const double nx = std::clamp(0.0, x0, x0 + h);
      const double ny = std::clamp(0.0, y0, y0 + h);
      if (nx * nx + ny * ny > 1.0) continue;
      const std::array<double, 4> c{grid.value(i, j), grid.value(i + 1, j), grid.value(i + 1, j + 1), grid.value(i, j + 1)};
      int code = 0;
      for (int k = 0; k < 4; ++k) code |= (c[static_cast<std::size_t>(k)] > 0.0 ? 1 : 0) << k;
      if (code == 0 || code == 15) continue;
      const std::array<long, 4> e{grid.horizontal(i, j), grid.vertical(i + 1, j), grid.horizontal(i, j + 1), grid.vertical(i, j)};
      auto add = [&](int p, int q) { segs.push_back({e[static_cast<std::size_t>(p)], e[static_cast<std::size_t>(q)]}); };
      switch (code) {
      case 1: add(3, 0); break;
      case 2: add(0, 1); break;
      case 3: add(3, 1); break;
      case 4: add(1, 2); break;
      case 6: add(0, 2); break;
      case 7: add(3, 2); break;
      case 8: add(2, 3); break;
      case 9: add(0, 2); break;
      case 11: add(1, 2); break;
      case 12: add(1, 3); break;
      case 13: add(0, 1); break;
      case 14: add(3, 0); break;
      case 5:
      case 10: {
        const bool centre_positive = f.g(x0 + 0.5 * h, y0 + 0.5 * h) > 0.0;
        // the positive diagonal is joined through the centre when it is positive
        if ((code == 5) == centre_positive) {
          add(0, 1);
          add(2, 3);
        } else {
          add(3, 0);
          add(1, 2);
        }
        break;
      }
      default:
        break;
      }
    }
  }
  return segs;
}

struct Chain {
  std::vector<long> edges;
  bool closed = false;
};

std::vector<Chain> stitch(const std::vector<Segment>& segs) {
  std::unordered_map<long, std::array<int, 2>> by_edge;
  by_edge.reserve(segs.size() * 2);
  for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
    for (long e : {segs[static_cast<std::size_t>(s)].a, segs[static_cast<std::size_t>(s)].b}) {
      auto [it, inserted] = by_edge.try_emplace(e, std::array<int, 2>{s, -1});
      if (!inserted) it->second[1] = s;
    }
  }
  auto other_segment = [&](long edge, int seg) {
    const auto& pair = by_edge.at(edge);
    return pair[0] == seg ? pair[1] : pair[0];
  };
  auto other_edge = [&](int seg, long edge) {
    const Segment& s = segs[static_cast<std::size_t>(seg)];
    return s.a == edge ? s.b : s.a;
  };

  std::vector<char> used(segs.size(), 0);
  std::vector<Chain> chains;
  for (int start = 0; start < static_cast<int>(segs.size()); ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    used[static_cast<std::size_t>(start)] = 1;
    Chain chain;
    std::vector<long> forward{segs[static_cast<std::size_t>(start)].a, segs[static_cast<std::size_t>(start)].b};
    // forward from b
    int seg = start;
    long edge = forward.back();
    for (;;) {
      const int next = other_segment(edge, seg);
      if (next < 0 || used[static_cast<std::size_t>(next)]) {
        if (next == start && edge == forward.front()) chain.closed = true;
        break;
      }
      used[static_cast<std::size_t>(next)] = 1;
      edge = other_edge(next, edge);
      forward.push_back(edge);
      seg = next;
    }
    if (chain.closed) {
      forward.pop_back();
      chain.edges = std::move(forward);
      chains.push_back(std::move(chain));
      continue;
    }
    // backward from a
    std::vector<long> backward;
    seg = start;
    edge = forward.front();
    for (;;) {
      const int next = other_segment(edge, seg);
      if (next < 0 || used[static_cast<std::size_t>(next)]) break;
      used[static_cast<std::size_t>(next)] = 1;
      edge = other_edge(next, edge);
      backward.push_back(edge);
      seg = next;
    }
    chain.edges.assign(backward.rbegin(), backward.rend());
    chain.edges.insert(chain.edges.end(), forward.begin(), forward.end());
    chains.push_back(std::move(chain));
  }
  return chains;
}

bool inside(Point2 p) { return p.x * p.x + p.y * p.y <= 1.0; }

void clip_to_disk(const Grid& grid, Polyline line, std::vector<Polyline>& out) {
  auto& pts = line.points;
  if (std::all_of(pts.begin(), pts.end(), inside)) {
    if (pts.size() >= 2) out.push_back(std::move(line));
    return;
  }
  if (line.closed) {
    // start at an outside vertex so every piece is open
    const auto first_out = std::find_if(pts.begin(), pts.end(), [](Point2 p) { return !inside(p); });
    std::rotate(pts.begin(), first_out, pts.end());
    pts.push_back(pts.front());
  }
  Polyline piece;
  auto flush = [&] {
    if (piece.points.size() >= 2) out.push_back(piece);
    piece.points.clear();
  };
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const bool in = inside(pts[k]);
    if (k > 0) {
      const bool prev_in = inside(pts[k - 1]);
      if (prev_in && !in) {
        piece.points.push_back(grid.boundary_point(pts[k - 1], pts[k]));
        flush();
      } else if (!prev_in && in) {
        piece.points.push_back(grid.boundary_point(pts[k], pts[k - 1]));
      }
    }
    if (in) piece.points.push_back(pts[k]);
  }
  flush();
}

// ---- symmetry ---------------------------------------------------------------

struct Seg2 {
  Point2 a;
  Point2 b;
};

double point_segment_distance(Point2 p, const Seg2& s) {
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double l2 = dx * dx + dy * dy;
  double t = l2 > 0.0 ? ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (s.a.x + t * dx), p.y - (s.a.y + t * dy));
}

class SegmentIndex {
public:
  explicit SegmentIndex(std::vector<Seg2> segs) : segs_(std::move(segs)) {
    lo_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point2 hi{-lo_.x, -lo_.y};
    for (const auto& s : segs_) {
      for (Point2 p : {s.a, s.b}) {
        lo_.x = std::min(lo_.x, p.x);
        lo_.y = std::min(lo_.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
      }
    }
    const double extent = std::max({hi.x - lo_.x, hi.y - lo_.y, 1e-300});
    cell_ = extent / 256.0;
    nx_ = static_cast<int>((hi.x - lo_.x) / cell_) + 1;
    ny_ = static_cast<int>((hi.y - lo_.y) / cell_) + 1;
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (int k = 0; k < static_cast<int>(segs_.size()); ++k) {
      const auto& s = segs_[static_cast<std::size_t>(k)];
      const int i0 = bx(std::min(s.a.x, s.b.x));
      const int i1 = bx(std::max(s.a.x, s.b.x));
      const int j0 = by(std::min(s.a.y, s.b.y));
      const int j1 = by(std::max(s.a.y, s.b.y));
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(k);
    }
  }

  double distance(Point2 p) const {
    const int pi = static_cast<int>(std::floor((p.x - lo_.x) / cell_));
    const int pj = static_cast<int>(std::floor((p.y - lo_.y) / cell_));
    // rings needed to reach the grid at all, and to cover it completely
    const int reach = std::max({0, -pi, pi - (nx_ - 1), -pj, pj - (ny_ - 1)});
    const int cover = std::max({std::abs(pi), std::abs(pi - nx_), std::abs(pj), std::abs(pj - ny_)});
    double best = std::numeric_limits<double>::infinity();
    for (int r = reach; r <= cover; ++r) {
      for (int j = pj - r; j <= pj + r; ++j) {
        if (j < 0 || j >= ny_) continue;
        const bool edge_row = (j == pj - r || j == pj + r);
        for (int i = pi - r; i <= pi + r; i += edge_row ? 1 : 2 * r) {
          if (i >= 0 && i < nx_) {
            for (int k : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
              best = std::min(best, point_segment_distance(p, segs_[static_cast<std::size_t>(k)]));
            }
          }
          if (r == 0) break;
        }
      }
      if (best <= r * cell_) break;
    }
    return best;
  }

private:
  int bx(double x) const { return std::clamp(static_cast<int>((x - lo_.x) / cell_), 0, nx_ - 1); }
  int by(double y) const { return std::clamp(static_cast<int>((y - lo_.y) / cell_), 0, ny_ - 1); }

  std::vector<Seg2> segs_;
  Point2 lo_;
  double cell_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

std::vector<Seg2> segments_of(const std::vector<Polyline>& curves) {
  std::vector<Seg2> out;
  for (const auto& c : curves) {
    for (std::size_t k = 1; k < c.points.size(); ++k) out.push_back({c.points[k - 1], c.points[k]});
    if (c.closed && c.points.size() > 2) out.push_back({c.points.back(), c.points.front()});
  }
  return out;
}

std::vector<Point2> vertices_of(const std::vector<Polyline>& curves) {
  std::vector<Point2> out;
  for (const auto& c : curves) out.insert(out.end(), c.points.begin(), c.points.end());
  return out;
}

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double diameter_of(std::vector<Point2> pts) {
  if (pts.size() < 2) return 0.0;
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double d = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) d = std::max(d, std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y));
  return d;
}

Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Symmetric Hausdorff distance between the curves and their rotation; stops
// early once the distance exceeds cutoff.
double rotated_hausdorff(const std::vector<Point2>& verts, const SegmentIndex& index, double angle, double cutoff) {
  double worst = 0.0;
  for (double a : {angle, -angle}) {
    for (const auto& v : verts) {
      worst = std::max(worst, index.distance(rotate(v, a)));
      if (worst > cutoff) return worst;
    }
  }
  return worst;
}

// ---- verdict -----------------------------------------------------------------

Point2 length_weighted_centroid(const std::vector<Polyline>& curves) {
  double sx = 0.0;
  double sy = 0.0;
  double total = 0.0;
  for (const auto& s : segments_of(curves)) {
    const double len = std::hypot(s.b.x - s.a.x, s.b.y - s.a.y);
    sx += len * 0.5 * (s.a.x + s.b.x);
    sy += len * 0.5 * (s.a.y + s.b.y);
    total += len;
  }
  if (total == 0.0) return {};
  return {sx / total, sy / total};
}

// Keeps the longest tip of every group closer than merge_angle.
std::vector<SpikeTip> merge_tips(std::vector<SpikeTip> tips, double merge_angle, const std::vector<SpikeTip>& blockers) {
  std::sort(tips.begin(), tips.end(), [](const SpikeTip& a, const SpikeTip& b) { return a.radius_arcmin > b.radius_arcmin; });
  std::vector<SpikeTip> kept;
  for (const auto& t : tips) {
    auto near = [&](const SpikeTip& o) { return angular_distance(o.angle, t.angle) <= merge_angle; };
    if (std::any_of(kept.begin(), kept.end(), near) || std::any_of(blockers.begin(), blockers.end(), near)) continue;
    kept.push_back(t);
  }
  return kept;
}

std::vector<std::vector<SpikeTip>> radius_classes(std::vector<SpikeTip> tips, double tolerance) {
  std::sort(tips.begin(), tips.end(), [](const SpikeTip& a, const SpikeTip& b) { return a.radius_arcmin > b.radius_arcmin; });
  std::vector<std::vector<SpikeTip>> classes;
  for (const auto& t : tips) {
    if (!classes.empty() && classes.back().front().radius_arcmin - t.radius_arcmin <= tolerance * classes.back().front().radius_arcmin) {
      classes.back().push_back(t);
    } else {
      classes.push_back({t});
    }
  }
  return classes;
}

} // namespace

ContourSet extract_contours(const HessianField& field, int resolution) {
  if (resolution < 64 || resolution > 4096) {
    throw ValidationError("grid resolution must be in [64, 4096], got " + std::to_string(resolution));
  }
  ContourSet out;
  out.grid_resolution = resolution;
  if (field.g.is_zero()) {
    out.degenerate = true;
    return out;
  }
  if (field.g.degree() == 0) return out;

  const Grid grid(field, resolution);
  const std::vector<Segment> segs = march(field, grid);
  std::unordered_map<long, Point2> vertex_cache;
  for (const Chain& chain : stitch(segs)) {
    Polyline line;
    line.closed = chain.closed;
    for (long e : chain.edges) {
      auto [it, inserted] = vertex_cache.try_emplace(e);
      if (inserted) it->second = grid.edge_point(e);
      line.points.push_back(it->second);
    }
    clip_to_disk(grid, std::move(line), out.polylines);
  }
  return out;
}

Point2 map_to_retina(Point2 pupil, const HessianField& field, double pupil_radius_mm) {
  const double k = kArcminPerMilliradian / pupil_radius_mm;
  return {-field.wx(pupil.x, pupil.y) * k, -field.wy(pupil.x, pupil.y) * k};
}

std::vector<Point2> map_to_retina(std::span<const Point2> pupil, const WaveAberration& wavefront) {
  const HessianField field = build_field(wavefront);
  std::vector<Point2> out;
  out.reserve(pupil.size());
  for (const auto& p : pupil) out.push_back(map_to_retina(p, field, wavefront.pupil_radius()));
  return out;
}

bool CausticSet::empty() const {
  return std::none_of(retina_curves.begin(), retina_curves.end(), [](const Polyline& c) { return c.points.size() >= 2; });
}

std::size_t CausticSet::vertex_count() const {
  std::size_t n = 0;
  for (const auto& c : retina_curves) n += c.points.size();
  return n;
}

std::vector<CausticCusp> find_caustic_cusps(const ContourSet& contours, const HessianField& field, double pupil_radius_mm) {
  std::vector<CausticCusp> out;
  for (const auto& line : contours.polylines) {
    const auto& pts = line.points;
    const std::size_t n = pts.size();
    if (n < 3) continue;
    // Closed loops are walked one and a bit times so the kernel orientation
    // carries across the seam.
    const std::size_t steps = line.closed ? 2 * n : n;
    std::vector<double> f(steps);
    Point2 prev_k{};
    for (std::size_t s = 0; s < steps; ++s) {
      const Point2 p = pts[s % n];
      const double wxx = field.wxx(p.x, p.y);
      const double wxy = field.wxy(p.x, p.y);
      const double wyy = field.wyy(p.x, p.y);
      Point2 k = std::hypot(wxx, wxy) >= std::hypot(wxy, wyy) ? Point2{-wxy, wxx} : Point2{wyy, -wxy};
      if (s > 0 && k.x * prev_k.x + k.y * prev_k.y < 0.0) k = {-k.x, -k.y};
      prev_k = k;
      const Point2 t{-field.gy(p.x, p.y), field.gx(p.x, p.y)};
      f[s] = t.x * k.y - t.y * k.x;
    }
    auto emit = [&](const Point2& a, const Point2& b, double fa, double fb) {
      const double s = fa / (fa - fb);
      const Point2 p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      out.push_back({p, map_to_retina(p, field, pupil_radius_mm)});
    };
    std::size_t start = 0;
    while (start < n && f[start] == 0.0) ++start;
    if (start == n) continue;
    const std::size_t stop = line.closed ? start + n : n;
    std::size_t last = start; // last vertex with f != 0
    for (std::size_t s = start + 1; s <= std::min(stop, steps - 1); ++s) {
      if (f[s] == 0.0) continue;
      if ((f[s] > 0.0) != (f[last] > 0.0)) {
        if (last + 1 == s) {
          emit(pts[last % n], pts[s % n], f[last], f[s]);
        } else {
          // sign change through exact zeros, e.g. on a mirror axis
          const Point2 z = pts[((last + s) / 2) % n];
          out.push_back({z, map_to_retina(z, field, pupil_radius_mm)});
        }
      }
      last = s;
    }
  }
  return out;
}

CausticSet build_caustics(const WaveAberration& wavefront, const HessianField& field,
                          std::span<const CriticalPoint> critical_points, int resolution) {
  CausticSet out;
  out.pupil_radius_mm = wavefront.pupil_radius();
  out.pupil_contours = extract_contours(field, resolution);
  for (const auto& line : out.pupil_contours.polylines) {
    Polyline mapped;
    mapped.closed = line.closed;
    mapped.points.reserve(line.points.size());
    for (const auto& p : line.points) mapped.points.push_back(map_to_retina(p, field, out.pupil_radius_mm));
    out.retina_curves.push_back(std::move(mapped));
  }
  for (const auto& cp : critical_points) {
    out.projected_cusps.push_back({cp, map_to_retina({cp.x, cp.y}, field, out.pupil_radius_mm)});
  }
  out.caustic_cusps = find_caustic_cusps(out.pupil_contours, field, out.pupil_radius_mm);
  return out;
}

double rotation_residual(const CausticSet& caustics, int p) {
  if (caustics.empty()) throw std::invalid_argument("symmetry of empty caustics is undefined");
  const std::vector<Point2> verts = vertices_of(caustics.retina_curves);
  const double diameter = diameter_of(verts);
  if (diameter == 0.0) return 0.0;
  const SegmentIndex index(segments_of(caustics.retina_curves));
  return rotated_hausdorff(verts, index, kTwoPi / p, std::numeric_limits<double>::infinity()) / diameter;
}

SymmetryResult symmetry_order(const CausticSet& caustics, double tolerance) {
  if (caustics.empty()) throw std::invalid_argument("symmetry of empty caustics is undefined");
  const std::vector<Point2> verts = vertices_of(caustics.retina_curves);
  SymmetryResult out;
  out.diameter = diameter_of(verts);
  if (out.diameter == 0.0) return out;
  const SegmentIndex index(segments_of(caustics.retina_curves));
  double best = std::numeric_limits<double>::infinity();
  for (int p = 12; p >= 2; --p) {
    const double h = rotated_hausdorff(verts, index, kTwoPi / p, tolerance * out.diameter) / out.diameter;
    if (h < tolerance) {
      out.p = p;
      out.residual = h;
      return out;
    }
    best = std::min(best, h);
  }
  out.residual = best;
  return out;
}

const char* to_string(StarburstKind k) {
  switch (k) {
  case StarburstKind::EquallyDistanced:
    return "EquallyDistanced";
  case StarburstKind::NonEquallyDistanced:
    return "NonEquallyDistanced";
  case StarburstKind::None:
    return "None";
  }
  return "None";
}

StarburstSummary starburst_verdict(const CausticSet& caustics, const VerdictOptions& opts) {
  if (!(opts.threshold_arcmin > 0.0)) throw ValidationError("visibility threshold must be positive");
  StarburstSummary out;
  out.visibility_threshold = opts.threshold_arcmin;
  if (caustics.empty()) {
    out.p_fold = opts.azimuthal_signature;
    return out;
  }
  const SymmetryResult sym = symmetry_order(caustics, opts.symmetry_tolerance);
  out.p_fold = sym.p;
  out.symmetry_residual = sym.residual;

  const Point2 c = length_weighted_centroid(caustics.retina_curves);
  const int bins = opts.angular_bins;
  std::vector<double> extent(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> extent_angle(static_cast<std::size_t>(bins), 0.0);
  auto record = [&](Point2 v) {
    const double r = std::hypot(v.x - c.x, v.y - c.y);
    const double a = wrap(std::atan2(v.x - c.x, v.y - c.y));
    const auto b = static_cast<std::size_t>(std::min(bins - 1, static_cast<int>(a / kTwoPi * bins)));
    if (r > extent[b]) {
      extent[b] = r;
      extent_angle[b] = a;
    }
  };
  // Segments are subdivided so that coarse contours still reach every bin they sweep.
  const double half_bin = 0.5 * kTwoPi / bins;
  for (const auto& s : segments_of(caustics.retina_curves)) {
    const double a0 = std::atan2(s.a.x - c.x, s.a.y - c.y);
    const double a1 = std::atan2(s.b.x - c.x, s.b.y - c.y);
    const int pieces = std::clamp(static_cast<int>(std::ceil(angular_distance(a0, a1) / half_bin)), 1, 4096);
    for (int k = 0; k < pieces; ++k) {
      const double t = static_cast<double>(k) / pieces;
      record({s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)});
    }
  }
  for (const auto& curve : caustics.retina_curves)
    if (!curve.points.empty()) record(curve.points.back());
  std::vector<double> sorted = extent;
  std::nth_element(sorted.begin(), sorted.begin() + bins / 2, sorted.end());
  out.median_extent = sorted[static_cast<std::size_t>(bins / 2)];

  std::vector<SpikeTip> peaks;
  for (int b = 0; b < bins; ++b) {
    const double v = extent[static_cast<std::size_t>(b)];
    const double prev = extent[static_cast<std::size_t>((b + bins - 1) % bins)];
    const double next = extent[static_cast<std::size_t>((b + 1) % bins)];
    if (v >= prev && v > next && v > opts.median_factor * out.median_extent && v > opts.threshold_arcmin) {
      peaks.push_back({v, extent_angle[static_cast<std::size_t>(b)], true});
    }
  }
  std::vector<SpikeTip> long_tips = merge_tips(peaks, opts.merge_angle, {});
  const double longest = long_tips.empty() ? 0.0 : long_tips.front().radius_arcmin;

  std::vector<SpikeTip> cusp_tips;
  for (const auto& cc : caustics.caustic_cusps) {
    const double r = std::hypot(cc.retina.x - c.x, cc.retina.y - c.y);
    if (r > opts.threshold_arcmin && r >= opts.short_tip_ratio * longest) {
      cusp_tips.push_back({r, wrap(std::atan2(cc.retina.x - c.x, cc.retina.y - c.y)), false});
    }
  }
  std::vector<SpikeTip> short_tips = merge_tips(cusp_tips, opts.merge_angle, long_tips);

  std::vector<SpikeTip> tips = long_tips;
  tips.insert(tips.end(), short_tips.begin(), short_tips.end());
  const auto classes = radius_classes(tips, opts.radius_tolerance);
  for (auto& t : tips) t.long_tip = !classes.empty() && t.radius_arcmin >= classes.front().back().radius_arcmin;
  std::sort(tips.begin(), tips.end(), [](const SpikeTip& a, const SpikeTip& b) { return a.angle < b.angle; });
  out.spike_tips = tips;
  out.point_count = static_cast<int>(tips.size());

  const int p = out.p_fold;
  if (p < 2) return out;
  if (classes.size() == 1 && static_cast<int>(tips.size()) == p) {
    out.kind = StarburstKind::EquallyDistanced;
  } else if (classes.size() == 2 && static_cast<int>(classes[0].size()) == p && static_cast<int>(classes[1].size()) == p) {
    bool alternating = true;
    for (std::size_t k = 0; k < tips.size(); ++k) {
      if (tips[k].long_tip == tips[(k + 1) % tips.size()].long_tip) alternating = false;
    }
    if (alternating) out.kind = StarburstKind::NonEquallyDistanced;
  }
  return out;
}

std::vector<FertilityEntry> fertility_report(std::span<const CriticalPoint> saddles, const ContourSet& contours,
                                             double distance) {
  if (!(distance > 0.0)) throw ValidationError("fertility distance must be positive");
  std::vector<FertilityEntry> out;
  for (const auto& s : saddles) {
    FertilityEntry e;
    e.saddle = s;
    e.nearest_distance = std::numeric_limits<double>::infinity();
    for (const auto& line : contours.polylines) {
      const auto& pts = line.points;
      int runs = 0;
      bool prev = false;
      bool first = false;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const double d = std::hypot(pts[k].x - s.x, pts[k].y - s.y);
        e.nearest_distance = std::min(e.nearest_distance, d);
        const bool near = d <= distance;
        if (near && !prev) ++runs;
        if (k == 0) first = near;
        prev = near;
      }
      // a run through the closing segment was counted twice
      if (line.closed && runs > 1 && first && prev) --runs;
      e.branches += runs;
    }
    e.fertile = e.branches >= 2;
    out.push_back(e);
  }
  return out;
}

} // namespace starburst
