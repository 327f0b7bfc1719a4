#include "tbell/io/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tbell/experiments.hpp"
#include "tbell/montecarlo.hpp"
#include "tbell/oracle.hpp"

namespace tbell::io {

namespace {

std::vector<double> angle_grid() {
  std::vector<double> v;
  for (int k = 0; k < 5; ++k) v.push_back(k * std::numbers::pi / 5.0);
  return v;
}

std::vector<double> delay_grid(double tau) { return linspace(-2.0 * tau, 2.0 * tau, 5); }

EngineOptions engine_for(const ValidationPlan& plan, std::uint64_t check, std::uint64_t point) {
  EngineOptions o;
  o.seed = plan.seed;
  o.stream = derive_seed(static_cast<std::uint64_t>(ExperimentTag::validation), check, point);
  o.threads = plan.threads;
  return o;
}

struct Tally {
  double worst = 0.0;
  std::size_t points = 0;
  std::size_t failures = 0;
  void record(double deviation, double allowed) {
    const double ratio = allowed > 0.0 ? deviation / allowed : (deviation > 0.0 ? INFINITY : 0.0);
    worst = std::max(worst, ratio);
    ++points;
    if (ratio > 1.0) ++failures;
  }
  CheckResult finish(std::string name) const {
    std::ostringstream d;
    d << failures << " of " << points << " points outside tolerance";
    return {std::move(name), failures == 0, worst, points, d.str()};
  }
};

CheckResult oracle_convergence(const ValidationPlan& plan, FluxMode mode) {
  InterferometerSettings base = default_settings(mode);
  Tally tally;
  std::uint64_t index = 0;
  for (double a : angle_grid()) {
    for (double b : angle_grid()) {
      for (double dt : delay_grid(base.pulse.tau_p)) {
        InterferometerSettings s = base;
        s.theta_A = a;
        s.theta_B = b;
        s.delta_t = dt;
        const std::uint64_t n = mode == FluxMode::low ? plan.low_flux_trials : plan.high_flux_trials;
        const auto run = estimate_subtracted(s, n, mode, engine_for(plan, 1 + (mode == FluxMode::high), index++));
        const double oracle = mode == FluxMode::low
                                  ? coincidence_subtracted(s)
                                  : photocurrent_crosscorr(s).crosscorr_subtracted;
        const double en = s.eta * s.mean_photons;
        double allowed = 3.0 * run.subtracted.std_error;
        if (mode == FluxMode::low) allowed = std::max(allowed, 0.02 * en * en / 4.0);
        tally.record(std::abs(run.subtracted.mean - oracle), allowed);
      }
    }
  }
  return tally.finish(mode == FluxMode::low ? "oracle convergence (low flux)"
                                            : "oracle convergence (high flux)");
}

CheckResult background_consistency(const ValidationPlan& plan) {
  const InterferometerSettings base = default_settings(FluxMode::low);
  Tally tally;
  std::uint64_t index = 0;
  for (double a : angle_grid()) {
    for (double b : angle_grid()) {
      InterferometerSettings s = base;
      s.theta_A = a;
      s.theta_B = b;
      const auto run = estimate_subtracted(s, plan.low_flux_trials, FluxMode::low,
                                           engine_for(plan, 3, index++));
      tally.record(std::abs(run.self_correlation.mean - coincidence_full(s).self_correlation),
                   3.0 * run.self_correlation.std_error);
    }
  }
  return tally.finish("background consistency (blocked-run sum)");
}

CheckResult singles_flatness(const ValidationPlan& plan) {
  const InterferometerSettings base = default_settings(FluxMode::low);
  Tally tally;
  std::uint64_t index = 0;
  for (double a : angle_grid()) {
    for (double dt : delay_grid(base.pulse.tau_p)) {
      InterferometerSettings s = base;
      s.theta_A = a;
      s.theta_B = a + std::numbers::pi / 3.0;
      s.delta_t = dt;
      const auto run = estimate_rates(s, plan.low_flux_trials, FluxMode::low, BlockingMode::none,
                                      engine_for(plan, 4, index++));
      for (Estimator id : {Estimator::singles_A, Estimator::singles_B}) {
        const auto& e = run.at(id);
        tally.record(std::abs(e.mean - singles_rate(s)), 3.0 * e.std_error);
      }
    }
  }
  return tally.finish("singles flatness");
}

}  // namespace

std::vector<CheckResult> run_validation_suite(const ValidationPlan& plan) {
  return {oracle_convergence(plan, FluxMode::low), oracle_convergence(plan, FluxMode::high),
          background_consistency(plan), singles_flatness(plan)};
}

}  // namespace tbell::io
