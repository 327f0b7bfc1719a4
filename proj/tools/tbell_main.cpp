#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tbell/io/config.hpp"
#include "tbell/io/runner.hpp"
#include "tbell/version.hpp"

namespace {

using tbell::io::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-light polarization-interferometer simulator", "tbell"};
  app.set_version_flag("--version", std::string(tbell::kVersion));

  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> backend;
  std::optional<std::string> mode;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  bool strict = false;
  bool emit_plot = false;

  app.add_option("experiment", experiment, "scan-delay | scan-angle | chsh | validate")
      ->required()
      ->check(CLI::IsMember({"scan-delay", "scan-angle", "chsh", "validate"}));
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--trials", trials, "gates per blocking run per point")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  app.add_option("--backend", backend)->check(CLI::IsMember({"oracle", "mc"}));
  app.add_option("--mode", mode)->check(CLI::IsMember({"low", "high"}));
  app.add_option("--out", out_path, "result file path");
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--strict", strict, "treat regime warnings as errors");
  app.add_flag("--emit-plot-script", emit_plot, "also write <out>.plot.py");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::usage);
  }

  std::ifstream file(config_path);
  if (!file) {
    std::cerr << "error: cannot read config '" << config_path << "'\n";
    return code(ExitCode::io_error);
  }
  std::ostringstream text;
  text << file.rdbuf();

  tbell::io::RunConfig config;
  try {
    config = tbell::io::load_config(text.str());
    config.experiment = tbell::io::parse_experiment(experiment);
    if (seed) config.seed = *seed;
    if (trials) {
      config.n_trials = *trials;
      config.n_trials_explicit = true;
    }
    if (backend) config.backend = tbell::parse_backend(*backend);
    if (mode) config.mode = tbell::parse_flux_mode(*mode);
    if (out_path) config.output_path = *out_path;
    if (format) config.format = tbell::io::parse_format(*format);
    config.strict = strict;
    config.emit_plot_script = emit_plot;
    tbell::io::apply_dependent_defaults(config);
    tbell::io::validate(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << config_path << ": " << e.what() << '\n';
    return code(ExitCode::usage);
  }

  return code(tbell::io::run(config, std::cout, std::cerr));
}
