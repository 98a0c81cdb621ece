#include "starburst/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace starburst {
namespace {

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string g4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

Rgb lerp(Rgb a, Rgb b, double t) {
  return {static_cast<int>(std::lround(a.r + (b.r - a.r) * t)), static_cast<int>(std::lround(a.g + (b.g - a.g) * t)),
          static_cast<int>(std::lround(a.b + (b.b - a.b) * t))};
}

// Pupil disk drawn in a square of side kSide at (kMargin, kMargin + kTitle).
constexpr double kMargin = 20.0;
constexpr double kTitle = 24.0;
constexpr double kSide = 400.0;
constexpr int kCells = 100;
constexpr int kLevels = 64;

double px(double x) { return kMargin + 0.5 * (x + 1.0) * kSide; }
double py(double y) { return kMargin + kTitle + 0.5 * (1.0 - y) * kSide; }

// Heat map of f over the disk, merging equal-colored runs within a row.
template <class F, class C>
void heat_map(SvgDocument& doc, F&& value, C&& color) {
  const double h = 2.0 / kCells;
  for (int j = 0; j < kCells; ++j) {
    const double y = 1.0 - (j + 0.5) * h;
    std::string run_color;
    int run_start = 0;
    auto flush = [&](int end) {
      if (run_color.empty()) return;
      doc.rect(px(-1.0 + run_start * h), py(y + 0.5 * h), (end - run_start) * 0.5 * h * kSide, 0.5 * h * kSide, run_color);
      run_color.clear();
    };
    for (int i = 0; i < kCells; ++i) {
      const double x = -1.0 + (i + 0.5) * h;
      std::string c;
      if (x * x + y * y <= 1.0) c = hex(color(value(x, y)));
      if (c != run_color) {
        flush(i);
        run_color = c;
        run_start = i;
      }
    }
    flush(kCells);
  }
  doc.circle(px(0.0), py(0.0), 0.5 * kSide, "none", "#333333");
}

template <class C>
void colorbar(SvgDocument& doc, double lo, double hi, C&& color, const std::string& label) {
  const double x = kMargin + kSide + 30.0;
  const double top = kMargin + kTitle;
  const double step = kSide / kLevels;
  for (int k = 0; k < kLevels; ++k) {
    const double t = 1.0 - (k + 0.5) / kLevels;
    doc.rect(x, top + k * step, 20.0, step + 0.3, hex(color(lo + t * (hi - lo))));
  }
  doc.rect(x, top, 20.0, kSide, "none", "#333333");
  doc.text(x + 24.0, top + 10.0, g4(hi), 11.0);
  doc.text(x + 24.0, top + kSide, g4(lo), 11.0);
  doc.text(x, top - 6.0, label, 11.0);
}

Rgb quantize_sequential(double t) { return sequential_color(std::floor(std::clamp(t, 0.0, 1.0) * (kLevels - 1) + 0.5) / (kLevels - 1)); }
Rgb quantize_diverging(double t) {
  const double q = std::floor((std::clamp(t, -1.0, 1.0) + 1.0) * 0.5 * (kLevels - 1) + 0.5) / (kLevels - 1);
  return diverging_color(2.0 * q - 1.0);
}

const char* class_color(PointClass c) {
  switch (c) {
  case PointClass::Saddle:
    return "#d62728";
  case PointClass::Extremum:
    return "#1f77b4";
  case PointClass::Degenerate:
    return "#7f7f7f";
  }
  return "#000000";
}

} // namespace

Rgb sequential_color(double t) {
  static const std::array<Rgb, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  return lerp(stops[k], stops[k + 1], t - static_cast<double>(k));
}

Rgb diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const Rgb white{247, 247, 247};
  if (t < 0.0) return lerp(white, {33, 102, 172}, -t);
  return lerp(white, {178, 24, 43}, t);
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", std::clamp(c.r, 0, 255), std::clamp(c.g, 0, 255), std::clamp(c.b, 0, 255));
  return buf;
}

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke) {
  body_ += "<rect x=\"" + f2(x) + "\" y=\"" + f2(y) + "\" width=\"" + f2(w) + "\" height=\"" + f2(h) + "\" fill=\"" +
           fill + "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
                       const std::string& dash) {
  body_ += "<line x1=\"" + f2(x1) + "\" y1=\"" + f2(y1) + "\" x2=\"" + f2(x2) + "\" y2=\"" + f2(y2) + "\" stroke=\"" +
           stroke + "\" stroke-width=\"" + f2(width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
  body_ += "/>\n";
}

void SvgDocument::polyline(const std::vector<Point2>& pts, bool closed, const std::string& stroke, double width) {
  if (pts.size() < 2) return;
  body_ += closed ? "<polygon points=\"" : "<polyline points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0) body_ += ' ';
    body_ += f2(pts[k].x) + ',' + f2(pts[k].y);
  }
  body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + f2(width) + "\"/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke) {
  body_ += "<circle cx=\"" + f2(cx) + "\" cy=\"" + f2(cy) + "\" r=\"" + f2(r) + "\" fill=\"" + fill + "\" stroke=\"" +
           stroke + "\"/>\n";
}

void SvgDocument::text(double x, double y, const std::string& s, double size, const std::string& anchor) {
  body_ += "<text x=\"" + f2(x) + "\" y=\"" + f2(y) + "\" font-family=\"sans-serif\" font-size=\"" + f2(size) +
           "\" text-anchor=\"" + anchor + "\">" + escape(s) + "</text>\n";
}

void SvgDocument::raw(const std::string& element) { body_ += element + "\n"; }

std::string SvgDocument::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         f2(width_) + "\" height=\"" + f2(height_) + "\" viewBox=\"0 0 " + f2(width_) + " " + f2(height_) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n" + body_ + "</svg>\n";
}

std::string wavefront_svg(const AnalysisResult& r) {
  SvgDocument doc(kSide + 2 * kMargin + 110.0, kSide + 2 * kMargin + kTitle);
  doc.text(kMargin, kMargin + 4.0, "W (um): " + r.scenario.name, 14.0);
  const Polynomial& w = r.field.w;
  double lo = 0.0;
  double hi = 0.0;
  const double h = 2.0 / kCells;
  for (int j = 0; j < kCells; ++j) {
    for (int i = 0; i < kCells; ++i) {
      const double x = -1.0 + (i + 0.5) * h;
      const double y = -1.0 + (j + 0.5) * h;
      if (x * x + y * y > 1.0) continue;
      lo = std::min(lo, w(x, y));
      hi = std::max(hi, w(x, y));
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  heat_map(doc, [&](double x, double y) { return w(x, y); }, [&](double v) { return quantize_sequential((v - lo) / span); });
  colorbar(doc, lo, hi, [&](double v) { return sequential_color((v - lo) / span); }, "um");
  return doc.str();
}

std::string g_map_svg(const AnalysisResult& r, double clip_fraction) {
  SvgDocument doc(kSide + 2 * kMargin + 110.0, kSide + 2 * kMargin + kTitle);
  const double full = std::max(r.max_abs_g, 1e-300);
  const double limit = clip_fraction > 0.0 ? clip_fraction * full : full;
  const std::string title = clip_fraction > 0.0 ? "G = det Hess W, clipped to +/-" + g4(100.0 * clip_fraction) + "% max|G|"
                                                : "G = det Hess W";
  doc.text(kMargin, kMargin + 4.0, title + ": " + r.scenario.name, 14.0);
  const Polynomial& g = r.field.g;
  heat_map(doc, [&](double x, double y) { return g(x, y); }, [&](double v) { return quantize_diverging(v / limit); });
  colorbar(doc, -limit, limit, [&](double v) { return diverging_color(v / limit); }, "G");
  if (clip_fraction > 0.0) {
    for (const auto& line : r.caustics.pupil_contours.polylines) {
      std::vector<Point2> pts;
      for (const auto& p : line.points) pts.push_back({px(p.x), py(p.y)});
      doc.polyline(pts, line.closed, "#000000", 1.2);
    }
    for (const auto& p : r.critical_points.points) doc.circle(px(p.x), py(p.y), 4.0, class_color(p.kind), "#000000");
  }
  return doc.str();
}

std::string retina_svg(const AnalysisResult& r) {
  SvgDocument doc(kSide + 2 * kMargin + 110.0, kSide + 2 * kMargin + kTitle);
  doc.text(kMargin, kMargin + 4.0, "Retina caustics (arcmin): " + r.scenario.name, 14.0);
  double extent = r.scenario.visibility_threshold_arcmin;
  for (const auto& c : r.caustics.retina_curves)
    for (const auto& p : c.points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  for (const auto& c : r.caustics.projected_cusps) extent = std::max({extent, std::abs(c.retina.x), std::abs(c.retina.y)});
  extent *= 1.1;
  auto sx = [&](double x) { return px(x / extent); };
  auto sy = [&](double y) { return py(y / extent); };

  doc.rect(px(-1.0), py(1.0), kSide, kSide, "#fafafa", "#333333");
  doc.line(sx(-extent), sy(0.0), sx(extent), sy(0.0), "#cccccc");
  doc.line(sx(0.0), sy(-extent), sx(0.0), sy(extent), "#cccccc");
  const double thr = r.scenario.visibility_threshold_arcmin;
  doc.raw("<circle cx=\"" + f2(sx(0.0)) + "\" cy=\"" + f2(sy(0.0)) + "\" r=\"" + f2(thr / extent * 0.5 * kSide) +
          "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>");
  for (const auto& c : r.caustics.retina_curves) {
    std::vector<Point2> pts;
    for (const auto& p : c.points) pts.push_back({sx(p.x), sy(p.y)});
    doc.polyline(pts, c.closed, "#222222", 1.0);
  }
  for (const auto& c : r.caustics.projected_cusps) doc.circle(sx(c.retina.x), sy(c.retina.y), 4.0, class_color(c.source.kind), "#000000");
  for (const auto& t : r.starburst.spike_tips) {
    const double x = t.radius_arcmin * std::sin(t.angle);
    const double y = t.radius_arcmin * std::cos(t.angle);
    doc.circle(sx(x), sy(y), 6.0, "none", t.long_tip ? "#ff7f0e" : "#2ca02c");
  }
  const double lx = kMargin + kSide + 12.0;
  double ly = kMargin + kTitle + 14.0;
  for (const auto& [label, color] : std::vector<std::pair<std::string, std::string>>{
           {"saddle", "#d62728"}, {"extremum", "#1f77b4"}, {"long tip", "#ff7f0e"}, {"short tip", "#2ca02c"}}) {
    doc.circle(lx + 5.0, ly - 4.0, 4.0, color);
    doc.text(lx + 14.0, ly, label, 11.0);
    ly += 18.0;
  }
  doc.text(lx, ly + 6.0, "half-width " + g4(extent), 11.0);
  doc.text(lx, ly + 24.0, std::to_string(r.starburst.point_count) + " points, " + to_string(r.starburst.kind), 11.0);
  return doc.str();
}

std::string regions_svg(const RegionDiagram& d) {
  constexpr double left = 70.0;
  constexpr double top = 40.0;
  constexpr double width = 500.0;
  constexpr double height = 400.0;
  SvgDocument doc(left + width + 150.0, top + height + 60.0);
  doc.text(left, 24.0, "Saddle regions, n=" + std::to_string(d.n) + ", beta=" + g4(d.beta) + " um", 14.0);
  const Window& w = d.window;
  const double gspan = w.gamma_hi > w.gamma_lo ? w.gamma_hi - w.gamma_lo : 1.0;
  const double aspan = w.alpha_hi > w.alpha_lo ? w.alpha_hi - w.alpha_lo : 1.0;
  auto sx = [&](double g) { return left + (g - w.gamma_lo) / gspan * width; };
  auto sy = [&](double a) { return top + height - (a - w.alpha_lo) / aspan * height; };
  auto fill = [](FamilyPresence f) -> std::string {
    switch (f) {
    case FamilyPresence::Even: return "#f5b66e";
    case FamilyPresence::Odd: return "#7fb2e5";
    case FamilyPresence::Both: return "#8fd18b";
    case FamilyPresence::None: return "#ffffff";
    }
    return "#ffffff";
  };

  const double cw = width / d.gamma_samples;
  const double ch = height / d.alpha_samples;
  for (int j = 0; j < d.alpha_samples; ++j) {
    for (int i = 0; i < d.gamma_samples; ++i) {
      const RegionCell& c = d.grid[static_cast<std::size_t>(j) * d.gamma_samples + i];
      if (c.presence == FamilyPresence::None) continue;
      doc.rect(left + i * cw, top + height - (j + 1) * ch, cw + 0.3, ch + 0.3, fill(c.presence));
    }
  }
  for (const auto& curve : d.boundary_curves) {
    std::vector<Point2> pts;
    for (const auto& p : curve.points) pts.push_back({sx(p.gamma), sy(p.alpha)});
    doc.polyline(pts, false, "#000000", 1.2);
  }
  doc.rect(left, top, width, height, "none", "#333333");
  for (const auto& t : d.ticks) {
    if (t.axis == Tick::Axis::Gamma) {
      if (t.value < w.gamma_lo || t.value > w.gamma_hi) continue;
      doc.line(sx(t.value), top + height, sx(t.value), top + height + 5.0, "#333333");
      doc.text(sx(t.value), top + height + 18.0, t.label, 10.0, "middle");
    } else {
      if (t.value < w.alpha_lo || t.value > w.alpha_hi) continue;
      doc.line(left - 5.0, sy(t.value), left, sy(t.value), "#333333");
      doc.text(left - 8.0, sy(t.value) + 4.0, t.label, 10.0, "end");
    }
  }
  doc.text(left + 0.5 * width, top + height + 40.0, "gamma (um): " + g4(w.gamma_lo) + " .. " + g4(w.gamma_hi), 12.0, "middle");
  doc.text(16.0, top + 0.5 * height, "alpha", 12.0);
  doc.text(16.0, top + 0.5 * height + 14.0, "(um)", 12.0);
  const double lx = left + width + 14.0;
  double ly = top + 14.0;
  for (auto [label, f] : std::vector<std::pair<std::string, FamilyPresence>>{
           {"even family (n)", FamilyPresence::Even}, {"odd family (n)", FamilyPresence::Odd}, {"both (2n)", FamilyPresence::Both}}) {
    doc.rect(lx, ly - 10.0, 12.0, 12.0, fill(f), "#333333");
    doc.text(lx + 18.0, ly, label, 11.0);
    ly += 18.0;
  }
  doc.text(lx, ly + 8.0, "alpha " + g4(w.alpha_lo) + " .. " + g4(w.alpha_hi), 11.0);
  return doc.str();
}

} // namespace starburst
