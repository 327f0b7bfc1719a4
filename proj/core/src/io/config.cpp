#include "tbell/io/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace tbell::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key, std::size_t line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'",
                      line);
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text, std::string_view key, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(
        std::string(key) + ": expected an unsigned integer, got '" + std::string(text) + "'",
        line);
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view key, std::size_t line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(std::string(key) + ": expected true or false", line);
}

using Setter = std::function<void(RunConfig&, std::string_view, std::size_t)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"experiment", [](RunConfig& c, std::string_view v, std::size_t) {
         c.experiment = parse_experiment(v);
       }},
      {"backend", [](RunConfig& c, std::string_view v, std::size_t) {
         c.backend = parse_backend(v);
       }},
      {"mode", [](RunConfig& c, std::string_view v, std::size_t) { c.mode = parse_flux_mode(v); }},
      {"theta_A", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.theta_A = parse_double(v, "theta_A", l);
       }},
      {"theta_B", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.theta_B = parse_double(v, "theta_B", l);
       }},
      {"delta_t", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.delta_t = parse_double(v, "delta_t", l);
       }},
      {"mean_photons", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.mean_photons = parse_double(v, "mean_photons", l);
         c.mean_photons_explicit = true;
       }},
      {"eta", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.eta = parse_double(v, "eta", l);
       }},
      {"gate_T", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.gate_T = parse_double(v, "gate_T", l);
       }},
      {"charge_q", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.charge_q = parse_double(v, "charge_q", l);
       }},
      {"tau_p", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.pulse.tau_p = parse_double(v, "tau_p", l);
       }},
      {"omega_0", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.settings.pulse.omega_0 = parse_double(v, "omega_0", l);
       }},
      {"n_trials", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.n_trials = parse_u64(v, "n_trials", l);
         c.n_trials_explicit = true;
       }},
      {"seed", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.seed = parse_u64(v, "seed", l);
       }},
      {"grid_start", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.grid.start = parse_double(v, "grid_start", l);
         c.grid_start_explicit = true;
       }},
      {"grid_stop", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.grid.stop = parse_double(v, "grid_stop", l);
         c.grid_stop_explicit = true;
       }},
      {"grid_count", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.grid.count = static_cast<std::size_t>(parse_u64(v, "grid_count", l));
         c.grid_count_explicit = true;
       }},
      {"output", [](RunConfig& c, std::string_view v, std::size_t) { c.output_path = v; }},
      {"format", [](RunConfig& c, std::string_view v, std::size_t) { c.format = parse_format(v); }},
      {"common_random_numbers", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.common_random_numbers = parse_bool(v, "common_random_numbers", l);
       }},
      {"threads", [](RunConfig& c, std::string_view v, std::size_t l) {
         c.threads = static_cast<unsigned>(parse_u64(v, "threads", l));
       }},
  };
  return table;
}

GridSpec default_grid(ExperimentKind kind) {
  if (kind == ExperimentKind::scan_angle) return {0.0, std::numbers::pi, 37};
  return {-defaults::kDelayScanSpan, defaults::kDelayScanSpan, 81};
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::scan_delay: return "scan-delay";
    case ExperimentKind::scan_angle: return "scan-angle";
    case ExperimentKind::chsh: return "chsh";
    case ExperimentKind::validate: return "validate";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

ExperimentKind parse_experiment(std::string_view text) {
  for (auto k : {ExperimentKind::scan_delay, ExperimentKind::scan_angle, ExperimentKind::chsh,
                 ExperimentKind::validate}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("experiment must be one of: scan-delay, scan-angle, chsh, validate");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be one of: csv, json");
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

void apply_dependent_defaults(RunConfig& c) {
  if (!c.mean_photons_explicit) {
    c.settings.mean_photons =
        c.mode == FluxMode::low ? defaults::kLowFluxPhotons : defaults::kHighFluxPhotons;
  }
  if (!c.n_trials_explicit) c.n_trials = c.mode == FluxMode::low ? 1'000'000 : 100'000;
  const GridSpec d = default_grid(c.experiment);
  if (!c.grid_start_explicit) c.grid.start = d.start;
  if (!c.grid_stop_explicit) c.grid.stop = d.stop;
  if (!c.grid_count_explicit) c.grid.count = d.count;
}

void validate(const RunConfig& c) {
  try {
    validate(c.settings);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0);
  }
  if (c.backend == Backend::mc && c.n_trials < 2) throw ConfigError("n_trials must be >= 2", 0);
  if ((c.experiment == ExperimentKind::scan_delay || c.experiment == ExperimentKind::scan_angle)) {
    if (c.grid.count < 1) throw ConfigError("grid_count must be >= 1", 0);
    if (c.grid.count > 1 && !(c.grid.stop > c.grid.start)) {
      throw ConfigError("grid_stop must exceed grid_start", 0);
    }
  }
  if (c.output_path.empty()) throw ConfigError("output must not be empty", 0);
}

RunConfig load_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::map<std::string, std::size_t, std::less<>> key_lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line_no);
    if (value.empty()) throw ConfigError(std::string(key) + ": missing value", line_no);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (!seen.emplace(key).second) {
      throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
    }
    key_lines.emplace(std::string(key), line_no);
    try {
      it->second(config, value, line_no);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  apply_dependent_defaults(config);
  try {
    validate(config.settings);
  } catch (const std::invalid_argument& e) {
    // Point at the line of the field named in the message when possible.
    const std::string msg = e.what();
    std::size_t where = 0;
    for (const auto& [key, l] : key_lines) {
      if (msg.rfind(key + " ", 0) == 0) where = l;
    }
    throw ConfigError(msg, where);
  }
  validate(config);
  return config;
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream out;
  const auto& s = c.settings;
  out << "experiment = " << to_string(c.experiment) << '\n'
      << "backend = " << to_string(c.backend) << '\n'
      << "mode = " << to_string(c.mode) << '\n'
      << "theta_A = " << format_double(s.theta_A) << '\n'
      << "theta_B = " << format_double(s.theta_B) << '\n'
      << "delta_t = " << format_double(s.delta_t) << '\n'
      << "mean_photons = " << format_double(s.mean_photons) << '\n'
      << "eta = " << format_double(s.eta) << '\n'
      << "gate_T = " << format_double(s.gate_T) << '\n'
      << "charge_q = " << format_double(s.charge_q) << '\n'
      << "tau_p = " << format_double(s.pulse.tau_p) << '\n'
      << "omega_0 = " << format_double(s.pulse.omega_0) << '\n'
      << "n_trials = " << c.n_trials << '\n'
      << "seed = " << c.seed << '\n'
      << "grid_start = " << format_double(c.grid.start) << '\n'
      << "grid_stop = " << format_double(c.grid.stop) << '\n'
      << "grid_count = " << c.grid.count << '\n'
      << "output = " << c.output_path << '\n'
      << "format = " << to_string(c.format) << '\n'
      << "common_random_numbers = " << (c.common_random_numbers ? "true" : "false") << '\n'
      << "threads = " << c.threads << '\n';
  return out.str();
}

}  // namespace tbell::io
