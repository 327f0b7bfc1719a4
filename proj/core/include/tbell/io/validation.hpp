#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tbell::io {

struct ValidationPlan {
  std::uint64_t low_flux_trials = 1'000'000;
  std::uint64_t high_flux_trials = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Largest |MC - oracle| / allowed deviation over the check's points.
  double worst_ratio = 0.0;
  std::size_t points = 0;
  std::string detail;
};

/// Oracle-versus-Monte-Carlo suite over the standard 5x5x5 grid of
/// (theta_A, theta_B, delta_t) plus background and singles checks.
std::vector<CheckResult> run_validation_suite(const ValidationPlan& plan);

}  // namespace tbell::io
