#pragma once

#include <string>
#include <vector>

#include "starburst/caustics.hpp"
#include "starburst/pipeline.hpp"
#include "starburst/zernike.hpp"

namespace starburst {

/// A published archetypal wavefront with its expected census and verdict.
struct Fixture {
  std::string name;
  std::vector<ZernikeTerm> terms;
  int cusps = 0;
  int saddles = 0;
  int n_fold = 0;
  int points = 0;
  StarburstKind kind = StarburstKind::None;
};

/// 3star, 5star, 4star, 6star, 8star at Rp = 3.5 mm.
const std::vector<Fixture>& published_fixtures();

Scenario fixture_scenario(const Fixture& f, int grid_resolution = kDefaultGridResolution);

struct FixtureOutcome {
  std::string name;
  int cusps = 0;
  int saddles = 0;
  int p_fold = 0;
  int points = 0;
  StarburstKind kind = StarburstKind::None;
  int fertile = 0;
  double seconds = 0.0;
  bool passed = false;
  std::string diagnostic;
};

FixtureOutcome run_fixture(const Fixture& f, int grid_resolution = kDefaultGridResolution);

} // namespace starburst
