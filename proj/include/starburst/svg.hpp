#pragma once

#include <string>
#include <vector>

#include "starburst/caustics.hpp"
#include "starburst/closed_form.hpp"
#include "starburst/pipeline.hpp"

namespace starburst {

struct Rgb {
  int r = 0;
  int g = 0;
  int b = 0;
};

/// Sequential map for t in [0, 1].
Rgb sequential_color(double t);
/// Blue-white-red map for t in [-1, 1].
Rgb diverging_color(double t);

class SvgDocument {
public:
  SvgDocument(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none");
  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
            const std::string& dash = "");
  void polyline(const std::vector<Point2>& pts, bool closed, const std::string& stroke, double width = 1.0);
  void circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke = "none");
  void text(double x, double y, const std::string& s, double size = 12.0, const std::string& anchor = "start");
  void raw(const std::string& element);

  std::string str() const;

private:
  double width_;
  double height_;
  std::string body_;
};

std::string hex(Rgb c);

/// W over the pupil with a colorbar.
std::string wavefront_svg(const AnalysisResult& r);
/// G over the pupil; clip_fraction > 0 limits the color range to
/// +/- clip_fraction * max|G| and overlays the G = 0 contours and cusps of Gauss.
std::string g_map_svg(const AnalysisResult& r, double clip_fraction);
/// Retina caustics with projected cusps of Gauss, spike tips and the visibility circle.
std::string retina_svg(const AnalysisResult& r);
/// Region diagram: sample grid colored by family, boundary curves and ticks.
std::string regions_svg(const RegionDiagram& d);

} // namespace starburst
