#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tbell/experiments.hpp"
#include "tbell/settings.hpp"

namespace tbell::io {

enum class ExperimentKind { scan_delay, scan_angle, chsh, validate };
enum class OutputFormat { csv, json };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(OutputFormat format);
ExperimentKind parse_experiment(std::string_view text);
OutputFormat parse_format(std::string_view text);

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
};

/// Fully resolved run description. Produced by load_config; every physical
/// parameter has been validated.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::scan_delay;
  Backend backend = Backend::oracle;
  FluxMode mode = FluxMode::low;
  InterferometerSettings settings{};
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 0;
  GridSpec grid{};
  std::string output_path = "tbell_out";
  OutputFormat format = OutputFormat::csv;
  bool common_random_numbers = false;
  unsigned threads = 0;
  bool strict = false;
  bool emit_plot_script = false;

  // Keys the user left to defaults whose value depends on other keys.
  bool mean_photons_explicit = false;
  bool n_trials_explicit = false;
  bool grid_start_explicit = false;
  bool grid_stop_explicit = false;
  bool grid_count_explicit = false;
};

/// Raised for malformed text (line > 0) and for invalid values (line is the
/// line of the offending key, or 0 when the problem spans keys).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses flat `key = value` text with `#` comments. Unknown and duplicate
/// keys are rejected.
RunConfig load_config(std::string_view text);

/// Inverse of load_config: every key, numbers written with 17 significant
/// digits so a reload reproduces the config exactly.
std::string emit_config(const RunConfig& config);

/// Re-applies the defaults that depend on experiment and mode (mean photon
/// number, trial count, scan grid) for keys the user did not set.
void apply_dependent_defaults(RunConfig& config);

/// Revalidates physical and run parameters; throws ConfigError.
void validate(const RunConfig& config);

std::string format_double(double value);

}  // namespace tbell::io
