#include "starburst/fixtures.hpp"

#include <algorithm>

namespace starburst {

const std::vector<Fixture>& published_fixtures() {
  static const std::vector<Fixture> fixtures{
      {"3star", {{4, 0, 0.2}, {3, 3, 0.2}}, 7, 3, 3, 3, StarburstKind::EquallyDistanced},
      {"5star", {{2, 0, 0.2}, {4, 0, 0.2}, {5, 5, 0.07}}, 11, 5, 5, 5, StarburstKind::EquallyDistanced},
      {"4star", {{4, 0, 0.2}, {4, 4, 0.15}}, 9, 4, 4, 4, StarburstKind::EquallyDistanced},
      {"6star", {{4, 0, 0.2}, {6, 6, 0.19}}, 7, 6, 6, 6, StarburstKind::EquallyDistanced},
      {"8star", {{4, 0, 0.2}, {4, 4, 0.09}}, 9, 4, 4, 8, StarburstKind::NonEquallyDistanced},
  };
  return fixtures;
}

Scenario fixture_scenario(const Fixture& f, int grid_resolution) {
  Scenario s;
  s.name = f.name;
  s.wavefront = WaveAberration(f.terms, 3.5);
  s.grid_resolution = grid_resolution;
  return s;
}

FixtureOutcome run_fixture(const Fixture& f, int grid_resolution) {
  const AnalysisResult r = analyze(fixture_scenario(f, grid_resolution));
  FixtureOutcome o;
  o.name = f.name;
  o.cusps = static_cast<int>(r.critical_points.points.size());
  o.saddles = static_cast<int>(r.critical_points.count(PointClass::Saddle));
  o.p_fold = r.starburst.p_fold;
  o.points = r.starburst.point_count;
  o.kind = r.starburst.kind;
  o.fertile = static_cast<int>(std::count_if(r.fertility.begin(), r.fertility.end(), [](const auto& e) { return e.fertile; }));
  o.seconds = r.elapsed_seconds;
  o.passed = o.cusps == f.cusps && o.saddles == f.saddles && o.p_fold == f.n_fold && o.points == f.points &&
             o.kind == f.kind;
  if (!o.passed) {
    o.diagnostic = "expected " + std::to_string(f.cusps) + " cusps / " + std::to_string(f.saddles) + " saddles / " +
                   std::to_string(f.n_fold) + "-fold / " + std::to_string(f.points) + " points " + to_string(f.kind);
  }
  return o;
}

} // namespace starburst
