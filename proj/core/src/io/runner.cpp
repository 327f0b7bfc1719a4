#include "tbell/io/runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <vector>

#include "tbell/experiments.hpp"
#include "tbell/io/results.hpp"
#include "tbell/io/validation.hpp"

namespace tbell::io {

namespace {

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  file << content;
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

ExperimentOptions options_of(const RunConfig& c) {
  ExperimentOptions o;
  o.backend = c.backend;
  o.mode = c.mode;
  o.n_trials = c.n_trials;
  o.seed = c.seed;
  o.threads = c.threads;
  o.common_random_numbers = c.common_random_numbers;
  return o;
}

// Regime status of every setting the experiment will evaluate.
std::vector<RegimeCheck> planned_regimes(const RunConfig& c) {
  std::vector<RegimeCheck> checks;
  InterferometerSettings s = c.settings;
  if (c.experiment == ExperimentKind::scan_delay) {
    for (double dt : linspace(c.grid.start, c.grid.stop, c.grid.count)) {
      s.delta_t = dt;
      checks.push_back(check_regime(s));
    }
  } else {
    checks.push_back(check_regime(s));
  }
  return checks;
}

std::string y_label(const RunConfig& c) {
  return c.mode == FluxMode::low ? "subtracted coincidences per gate"
                                 : "subtracted current cross-correlation (A^2)";
}

}  // namespace

ExitCode run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    validate(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  }

  if (config.experiment != ExperimentKind::validate) {
    for (const auto& r : planned_regimes(config)) {
      if (r.asymptotic) continue;
      if (config.strict) {
        err << "error: " << r.message << '\n';
        return ExitCode::regime_violation;
      }
      err << r.message << '\n';
      break;
    }
  }

  const ExperimentOptions options = options_of(config);
  std::string body;
  nlohmann::json json_body;
  std::string x_label = "x";
  ExitCode status = ExitCode::ok;

  try {
    switch (config.experiment) {
      case ExperimentKind::scan_delay:
      case ExperimentKind::scan_angle: {
        const auto grid = linspace(config.grid.start, config.grid.stop, config.grid.count);
        const ScanCurve curve = config.experiment == ExperimentKind::scan_delay
                                    ? delay_scan(config.settings, grid, options)
                                    : polarization_scan(config.settings, grid, options);
        x_label = config.experiment == ExperimentKind::scan_delay ? "delta_t (s)" : "theta_B (rad)";
        for (const auto& w : curve.warnings()) err << "warning: " << w << '\n';
        body = curve_to_csv(curve);
        json_body = curve_to_json(curve);
        out << "wrote " << curve.points().size() << " points (" << curve.estimator_id() << ")\n";
        break;
      }
      case ExperimentKind::chsh: {
        if (auto w = low_flux_warning(config.settings, options)) err << "warning: " << *w << '\n';
        const ChshResult result = chsh_experiment(config.settings, options);
        body = chsh_to_csv(result);
        json_body = chsh_to_json(result);
        x_label = "CHSH pair";
        out << "S = " << format_double(result.S) << " +/- " << format_double(result.std_error)
            << '\n';
        break;
      }
      case ExperimentKind::validate: {
        ValidationPlan plan;
        plan.low_flux_trials = config.n_trials;
        plan.high_flux_trials = std::max<std::uint64_t>(2, config.n_trials / 10);
        plan.seed = config.seed;
        plan.threads = config.threads;
        body = "check,passed,worst_ratio,points\n";
        json_body = nlohmann::json::array();
        for (const auto& check : run_validation_suite(plan)) {
          out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail
              << " (worst |dev|/tol = " << format_double(check.worst_ratio) << ")\n";
          body += check.name + ',' + (check.passed ? "true" : "false") + ',' +
                  format_double(check.worst_ratio) + ',' + std::to_string(check.points) + '\n';
          json_body.push_back({{"check", check.name},
                               {"passed", check.passed},
                               {"worst_ratio", check.worst_ratio},
                               {"points", check.points},
                               {"detail", check.detail}});
          if (!check.passed) status = ExitCode::validation_failed;
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const nlohmann::json meta = run_metadata(config, wall);
  std::string content = body;
  if (config.format == OutputFormat::json) {
    // Inline metadata leaves out what varies between identical runs.
    RunConfig reproducible = config;
    reproducible.threads = 0;
    nlohmann::json doc = {{"metadata", run_metadata(reproducible, 0.0)}, {"result", json_body}};
    doc["metadata"].erase("wall_time_s");
    content = doc.dump(2) + '\n';
  }
  if (!write_file(config.output_path, content, err) ||
      !write_file(config.output_path + ".meta.json", meta.dump(2) + '\n', err)) {
    return ExitCode::io_error;
  }
  if (config.emit_plot_script && config.format == OutputFormat::csv) {
    if (!write_file(config.output_path + ".plot.py",
                    plot_script(config.output_path, x_label, y_label(config)), err)) {
      return ExitCode::io_error;
    }
  }
  return status;
}

}  // namespace tbell::io
