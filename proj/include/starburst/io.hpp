#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "starburst/closed_form.hpp"
#include "starburst/pipeline.hpp"
#include "starburst/verification.hpp"

namespace starburst {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

/// Scenario file (JSON). Exactly one of "terms" or "shorthand" is required:
///   {"name": "3star", "pupil_radius_mm": 3.5,
///    "terms": [{"n": 4, "m": 0, "coeff_um": 0.2}, {"n": 3, "m": 3, "coeff_um": 0.2}]}
/// Throws ValidationError on malformed or inconsistent input.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Rounds to the given number of significant digits so that serialized
/// values re-parse to the same double.
double round_significant(double v, int digits = 12);

nlohmann::json report_json(const AnalysisResult& r, bool include_timing = false);
nlohmann::json verify_json(const VerifyReport& r);
nlohmann::json region_json(const RegionDiagram& d);

/// Pretty-printed with sorted keys and a trailing newline.
std::string serialize(const nlohmann::json& j);

void write_contours_csv(std::ostream& os, const CausticSet& c, bool retina);
void write_critical_points_csv(std::ostream& os, const AnalysisResult& r);
void write_regions_csv(std::ostream& os, const RegionDiagram& d);

/// Writes report.json, the CSVs and the SVG figures into dir (created if needed).
void write_analysis_outputs(const AnalysisResult& r, const std::filesystem::path& dir, bool include_timing = false);
void write_region_outputs(const RegionDiagram& d, const std::filesystem::path& dir);

} // namespace starburst
