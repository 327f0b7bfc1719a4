#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "tbell/experiments.hpp"
#include "tbell/io/config.hpp"

namespace tbell::io {

/// Header `x,y,yerr`, one row per point, 17 significant digits.
std::string curve_to_csv(const ScanCurve& curve);

/// Reads back the rows written by curve_to_csv.
std::vector<ScanPoint> parse_curve_csv(std::string_view text);

nlohmann::json settings_to_json(const InterferometerSettings& settings);
nlohmann::json curve_to_json(const ScanCurve& curve);
nlohmann::json chsh_to_json(const ChshResult& result);

/// CHSH correlations as a curve-format table: x = pair index (1..4),
/// y = E, yerr = its standard error.
std::string chsh_to_csv(const ChshResult& result);

/// Sidecar written next to every result file.
nlohmann::json run_metadata(const RunConfig& config, double wall_time_s);

/// A small matplotlib script that plots a curve CSV.
std::string plot_script(std::string_view csv_path, std::string_view x_label,
                        std::string_view y_label);

}  // namespace tbell::io
