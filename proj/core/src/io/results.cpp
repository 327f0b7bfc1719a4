#include "tbell/io/results.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "tbell/version.hpp"

namespace tbell::io {

std::string curve_to_csv(const ScanCurve& curve) {
  std::string out = "x,y,yerr\n";
  for (const auto& p : curve.points()) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.y);
    out += ',';
    out += format_double(p.yerr);
    out += '\n';
  }
  return out;
}

std::vector<ScanPoint> parse_curve_csv(std::string_view text) {
  const auto nl = text.find('\n');
  if (text.substr(0, nl) != "x,y,yerr") throw std::invalid_argument("missing x,y,yerr header");
  text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
  std::vector<ScanPoint> points;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view row = text.substr(0, end);
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    if (row.empty()) continue;
    double values[3] = {};
    for (int i = 0; i < 3; ++i) {
      const auto comma = i < 2 ? row.find(',') : row.size();
      if (comma == std::string_view::npos) throw std::invalid_argument("short CSV row");
      const std::string_view field = row.substr(0, comma);
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), values[i]);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::invalid_argument("bad CSV number '" + std::string(field) + "'");
      }
      row.remove_prefix(std::min(row.size(), comma + 1));
    }
    points.push_back({values[0], values[1], values[2], false});
  }
  return points;
}

nlohmann::json settings_to_json(const InterferometerSettings& s) {
  return {{"theta_A", s.theta_A},   {"theta_B", s.theta_B},   {"delta_t", s.delta_t},
          {"mean_photons", s.mean_photons}, {"eta", s.eta}, {"gate_T", s.gate_T},
          {"charge_q", s.charge_q}, {"tau_p", s.pulse.tau_p}, {"omega_0", s.pulse.omega_0}};
}

nlohmann::json curve_to_json(const ScanCurve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points()) {
    points.push_back({{"x", p.x}, {"y", p.y}, {"yerr", p.yerr}, {"regime_flag", p.regime_flag}});
  }
  return {{"variable", to_string(curve.variable())},
          {"estimator_id", curve.estimator_id()},
          {"mode", to_string(curve.mode())},
          {"settings", settings_to_json(curve.settings_snapshot())},
          {"warnings", curve.warnings()},
          {"points", std::move(points)}};
}

nlohmann::json chsh_to_json(const ChshResult& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < r.angles.size(); ++i) {
    nlohmann::json rates = nlohmann::json::array();
    const auto combos = chsh_complements(r.angles[i]);
    for (std::size_t k = 0; k < combos.size(); ++k) {
      rates.push_back({{"theta_A", combos[k].theta_A},
                       {"theta_B", combos[k].theta_B},
                       {"value", r.rates[i][k].value},
                       {"std_error", r.rates[i][k].std_error}});
    }
    pairs.push_back({{"theta_A", r.angles[i].theta_A},
                     {"theta_B", r.angles[i].theta_B},
                     {"E", r.correlations[i]},
                     {"E_std_error", r.correlation_errors[i]},
                     {"rates", std::move(rates)}});
  }
  return {{"S", r.S}, {"S_std_error", r.std_error}, {"angle_set", "canonical"},
          {"pairs", std::move(pairs)}};
}

std::string chsh_to_csv(const ChshResult& r) {
  std::string out = "x,y,yerr\n";
  for (std::size_t i = 0; i < r.correlations.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_double(r.correlations[i]) + ',' +
           format_double(r.correlation_errors[i]) + '\n';
  }
  return out;
}

nlohmann::json run_metadata(const RunConfig& config, double wall_time_s) {
  return {{"software", "tbell"},
          {"version", kVersion},
          {"experiment", to_string(config.experiment)},
          {"seed", config.seed},
          {"wall_time_s", wall_time_s},
          {"config", emit_config(config)},
          {"settings", settings_to_json(config.settings)}};
}

std::string plot_script(std::string_view csv_path, std::string_view x_label,
                        std::string_view y_label) {
  std::ostringstream out;
  out << "#!/usr/bin/env python3\n"
      << "import csv\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "rows = list(csv.DictReader(open(\"" << csv_path << "\")))\n"
      << "x = [float(r[\"x\"]) for r in rows]\n"
      << "y = [float(r[\"y\"]) for r in rows]\n"
      << "e = [float(r[\"yerr\"]) for r in rows]\n"
      << "plt.errorbar(x, y, yerr=e, fmt=\"o-\", ms=3)\n"
      << "plt.xlabel(\"" << x_label << "\")\n"
      << "plt.ylabel(\"" << y_label << "\")\n"
      << "plt.tight_layout()\n"
      << "plt.savefig(\"" << csv_path << ".png\", dpi=150)\n";
  return out.str();
}

}  // namespace tbell::io
