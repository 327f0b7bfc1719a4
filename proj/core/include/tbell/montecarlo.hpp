#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "tbell/field.hpp"
#include "tbell/random.hpp"
#include "tbell/settings.hpp"
#include "tbell/speckle.hpp"

namespace tbell {

/// Which fiber tip, if any, carries a beam block for a run. Blocking the
/// plus tip forces v+ = 0 for every gate; blocking the minus tip forces v- = 0.
enum class BlockingMode { none, block_plus, block_minus };

enum class Estimator { singles_A, singles_B, coincidence, crosscorr };

std::string_view to_string(BlockingMode mode);
std::string_view to_string(Estimator estimator);

struct DetectorCounts {
  std::uint64_t A = 0;
  std::uint64_t B = 0;
};

struct DetectorCurrents {
  double A = 0.0;  // amperes
  double B = 0.0;
};

/// Result of one gate: photon counts in low-flux mode, photocurrent samples
/// i_K(0) in high-flux mode. Exactly one of the two is present.
struct TrialOutcome {
  FluxMode mode = FluxMode::low;
  std::optional<DetectorCounts> counts;
  std::optional<DetectorCurrents> currents;

  /// Both detectors registered at least one photoelectron in the gate.
  bool coincidence() const;
};

/// Per-settings detection kernel. Gate integrals are computed once by
/// quadrature; afterwards each gate's mean photoelectron numbers are a
/// quadratic form in the speckle amplitudes.
class GateModel {
 public:
  explicit GateModel(const InterferometerSettings& settings);

  const InterferometerSettings& settings() const { return settings_; }
  const GateIntegrals& integrals() const { return integrals_; }

  /// eta * gated_energy(E_K) for K = A, B.
  std::array<double, 2> mean_photoelectrons(const SpecklePair& speckle) const;

 private:
  struct Coefficients {
    double plus = 0.0;
    double minus = 0.0;
    double cross = 0.0;
  };
  InterferometerSettings settings_;
  GateIntegrals integrals_;
  std::array<Coefficients, 2> coefficients_{};
};

SpecklePair apply_blocking(SpecklePair speckle, BlockingMode blocking);

/// Poisson variate. Means below 30 use single-uniform CDF inversion, so the
/// count is a monotone function of one uniform and the stream advances by
/// exactly one draw; larger means defer to std::poisson_distribution.
std::uint64_t sample_poisson(double mean, RandomStream& rng);

/// Conditionally independent Poisson detection given a fixed speckle pair.
TrialOutcome detect_lowflux(const GateModel& model, const SpecklePair& speckle,
                            RandomStream& rng);
TrialOutcome detect_highflux(const GateModel& model, const SpecklePair& speckle,
                             RandomStream& rng);

/// One coincidence gate: draw speckle, apply the block, detect.
TrialOutcome simulate_gate_lowflux(const GateModel& model, RandomStream& rng,
                                   BlockingMode blocking);
TrialOutcome simulate_gate_highflux(const GateModel& model, RandomStream& rng,
                                    BlockingMode blocking);
TrialOutcome simulate_gate(const GateModel& model, FluxMode mode, RandomStream& rng,
                           BlockingMode blocking);

struct RunEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  Estimator estimator = Estimator::coincidence;
};

struct EngineOptions {
  std::uint64_t seed = 0;
  /// Identifies the run within an experiment (e.g. a scan point).
  std::uint64_t stream = 0;
  /// Worker threads; 0 means std::thread::hardware_concurrency(). Results do
  /// not depend on this value.
  unsigned threads = 0;
  /// Share trial streams between the three blocking runs (variance
  /// reduction). Off by default: the physical protocol uses separate
  /// measurements.
  bool common_random_numbers = false;
};

struct RunResult {
  InterferometerSettings settings;
  FluxMode mode = FluxMode::low;
  BlockingMode blocking = BlockingMode::none;
  std::map<Estimator, RunEstimate> estimates;

  const RunEstimate& at(Estimator estimator) const;
};

/// Seed of the stream owned by one trial.
std::uint64_t trial_seed(const EngineOptions& options, BlockingMode blocking,
                         std::uint64_t trial);

/// Raw per-trial observables (n_A, n_B, coincidence indicator) in low flux,
/// (n_A, n_B, n_A n_B) in high flux, before unit scaling.
std::array<double, 3> trial_observables(const GateModel& model, FluxMode mode,
                                        BlockingMode blocking, const EngineOptions& options,
                                        std::uint64_t trial);

/// Sample-mean estimators over n_trials gates. Low flux reports singles in
/// counts/gate and the coincidence frequency; high flux reports mean currents
/// (A) and the current product <i_A(0) i_B(0)> (A^2). Throws
/// std::invalid_argument for n_trials < 2.
RunResult estimate_rates(const InterferometerSettings& settings, std::uint64_t n_trials,
                         FluxMode mode, BlockingMode blocking, const EngineOptions& options);

/// C(none) - C(block_minus) - C(block_plus) for independent runs, standard
/// errors added in quadrature. Throws std::invalid_argument if the runs do not
/// share settings and mode or carry the wrong blocking modes.
RunEstimate subtract_background(const RunResult& run_none, const RunResult& run_block_plus,
                                const RunResult& run_block_minus);

struct BackgroundSubtraction {
  RunEstimate subtracted;
  RunEstimate self_correlation;  // C(block_plus) + C(block_minus)
  RunResult run_none;
  RunResult run_block_plus;
  RunResult run_block_minus;
  bool paired = false;
};

/// Runs the three-measurement blocking protocol. With common random numbers
/// the three runs share trial streams and the errors come from the per-gate
/// paired differences instead of quadrature.
BackgroundSubtraction estimate_subtracted(const InterferometerSettings& settings,
                                          std::uint64_t n_trials, FluxMode mode,
                                          const EngineOptions& options);

}  // namespace tbell
