#include "tbell/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tbell/statistics.hpp"

namespace tbell {

namespace {

constexpr double kInversionLimit = 30.0;
constexpr std::uint64_t kBatchSize = 1u << 15;
constexpr std::size_t kObservables = 3;

using Moments = std::array<SampleMoments, kObservables>;

unsigned resolve_threads(unsigned requested, std::uint64_t n_batches) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(1, n_batches)));
}

// Runs fn(acc, begin, end) over fixed-size trial batches and merges the
// per-batch accumulators in batch order, so the result is independent of the
// thread count and of scheduling.
template <typename Acc, typename BatchFn>
Acc run_batches(std::uint64_t n_trials, unsigned threads, BatchFn fn) {
  const std::uint64_t n_batches = (n_trials + kBatchSize - 1) / kBatchSize;
  std::vector<Acc> partial(n_batches);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < n_batches; b = next++) {
      const std::uint64_t begin = b * kBatchSize;
      fn(partial[b], begin, std::min(n_trials, begin + kBatchSize));
    }
  };
  const unsigned n_threads = resolve_threads(threads, n_batches);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  Acc total{};
  for (const Acc& p : partial) total.merge(p);
  return total;
}

struct RunAccumulator {
  Moments moments;
  void merge(const RunAccumulator& other) {
    for (std::size_t i = 0; i < kObservables; ++i) moments[i].merge(other.moments[i]);
  }
};

struct PairedAccumulator {
  std::array<Moments, 3> per_mode;  // none, block_plus, block_minus
  SampleMoments subtracted;
  SampleMoments self;
  void merge(const PairedAccumulator& other) {
    for (std::size_t m = 0; m < 3; ++m) {
      for (std::size_t i = 0; i < kObservables; ++i) per_mode[m][i].merge(other.per_mode[m][i]);
    }
    subtracted.merge(other.subtracted);
    self.merge(other.self);
  }
};

std::array<double, 3> observables_of(const TrialOutcome& outcome) {
  if (outcome.mode == FluxMode::low) {
    const auto& c = *outcome.counts;
    return {static_cast<double>(c.A), static_cast<double>(c.B), outcome.coincidence() ? 1.0 : 0.0};
  }
  const auto& c = *outcome.counts;
  return {static_cast<double>(c.A), static_cast<double>(c.B),
          static_cast<double>(c.A) * static_cast<double>(c.B)};
}

std::array<double, 3> unit_scales(const InterferometerSettings& s, FluxMode mode) {
  if (mode == FluxMode::low) return {1.0, 1.0, 1.0};
  const double qt = s.charge_q / s.gate_T;
  return {qt, qt, qt * qt};
}

constexpr std::array<Estimator, 3> estimators_for(FluxMode mode) {
  return {Estimator::singles_A, Estimator::singles_B,
          mode == FluxMode::low ? Estimator::coincidence : Estimator::crosscorr};
}

RunResult make_result(const InterferometerSettings& s, FluxMode mode, BlockingMode blocking,
                      const Moments& moments) {
  RunResult result{s, mode, blocking, {}};
  const auto scales = unit_scales(s, mode);
  const auto ids = estimators_for(mode);
  for (std::size_t i = 0; i < kObservables; ++i) {
    result.estimates[ids[i]] = RunEstimate{scales[i] * moments[i].mean(),
                                           scales[i] * moments[i].std_error(),
                                           moments[i].count(), ids[i]};
  }
  return result;
}

void require_trials(std::uint64_t n_trials) {
  if (n_trials < 2) throw std::invalid_argument("n_trials must be >= 2");
}

// Internal detection step that keeps the raw counts even in high-flux mode,
// so high-flux observables stay exact integers until the final scaling.
TrialOutcome detect(const GateModel& model, FluxMode mode, const SpecklePair& speckle,
                    RandomStream& rng) {
  const auto mu = model.mean_photoelectrons(speckle);
  TrialOutcome out;
  out.mode = mode;
  DetectorCounts counts;
  counts.A = sample_poisson(mu[0], rng);
  counts.B = sample_poisson(mu[1], rng);
  out.counts = counts;
  if (mode == FluxMode::high) {
    const double qt = model.settings().charge_q / model.settings().gate_T;
    out.currents = DetectorCurrents{qt * static_cast<double>(counts.A),
                                    qt * static_cast<double>(counts.B)};
  }
  return out;
}

constexpr std::array<BlockingMode, 3> kProtocol = {BlockingMode::none, BlockingMode::block_plus,
                                                   BlockingMode::block_minus};

}  // namespace

std::string_view to_string(BlockingMode mode) {
  switch (mode) {
    case BlockingMode::none: return "none";
    case BlockingMode::block_plus: return "block_plus";
    case BlockingMode::block_minus: return "block_minus";
  }
  return "?";
}

std::string_view to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::singles_A: return "singles_A";
    case Estimator::singles_B: return "singles_B";
    case Estimator::coincidence: return "coincidence";
    case Estimator::crosscorr: return "crosscorr";
  }
  return "?";
}

bool TrialOutcome::coincidence() const {
  if (counts) return counts->A > 0 && counts->B > 0;
  return currents && currents->A > 0.0 && currents->B > 0.0;
}

GateModel::GateModel(const InterferometerSettings& settings)
    : settings_(settings), integrals_(gate_integrals(settings)) {
  validate(settings_);
  const double thetas[2] = {settings_.theta_A, settings_.theta_B};
  for (std::size_t k = 0; k < 2; ++k) {
    const double c = std::cos(thetas[k]);
    const double s = std::sin(thetas[k]);
    const double sign = k == 0 ? 1.0 : -1.0;
    coefficients_[k] = {0.5 * settings_.eta * c * c * integrals_.plus_energy,
                        0.5 * settings_.eta * s * s * integrals_.minus_energy,
                        sign * settings_.eta * c * s * integrals_.cross_overlap};
  }
}

std::array<double, 2> GateModel::mean_photoelectrons(const SpecklePair& v) const {
  const double p = std::norm(v.v_plus);
  const double m = std::norm(v.v_minus);
  const double x = std::real(v.v_plus * std::conj(v.v_minus));
  std::array<double, 2> mu{};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& c = coefficients_[k];
    // Clamp rounding-level negatives; the exact value is |E_K|^2-integral >= 0.
    mu[k] = std::max(0.0, c.plus * p + c.minus * m + c.cross * x);
  }
  return mu;
}

SpecklePair apply_blocking(SpecklePair speckle, BlockingMode blocking) {
  if (blocking == BlockingMode::block_plus) speckle.v_plus = 0.0;
  if (blocking == BlockingMode::block_minus) speckle.v_minus = 0.0;
  return speckle;
}

std::uint64_t sample_poisson(double mean, RandomStream& rng) {
  if (!(mean >= 0.0)) throw std::invalid_argument("Poisson mean must be >= 0");
  if (mean < kInversionLimit) {
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && p > 0.0) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  std::poisson_distribution<std::uint64_t> poisson(mean);
  return poisson(rng);
}

TrialOutcome detect_lowflux(const GateModel& model, const SpecklePair& speckle,
                            RandomStream& rng) {
  return detect(model, FluxMode::low, speckle, rng);
}

TrialOutcome detect_highflux(const GateModel& model, const SpecklePair& speckle,
                             RandomStream& rng) {
  TrialOutcome out = detect(model, FluxMode::high, speckle, rng);
  out.counts.reset();
  return out;
}

TrialOutcome simulate_gate(const GateModel& model, FluxMode mode, RandomStream& rng,
                           BlockingMode blocking) {
  const SpecklePair speckle =
      apply_blocking(sample_speckle(rng, model.settings().mean_photons), blocking);
  return mode == FluxMode::low ? detect_lowflux(model, speckle, rng)
                               : detect_highflux(model, speckle, rng);
}

TrialOutcome simulate_gate_lowflux(const GateModel& model, RandomStream& rng,
                                   BlockingMode blocking) {
  return simulate_gate(model, FluxMode::low, rng, blocking);
}

TrialOutcome simulate_gate_highflux(const GateModel& model, RandomStream& rng,
                                    BlockingMode blocking) {
  return simulate_gate(model, FluxMode::high, rng, blocking);
}

const RunEstimate& RunResult::at(Estimator estimator) const {
  const auto it = estimates.find(estimator);
  if (it == estimates.end()) {
    throw std::out_of_range("estimate not available: " + std::string(to_string(estimator)));
  }
  return it->second;
}

std::uint64_t trial_seed(const EngineOptions& options, BlockingMode blocking,
                         std::uint64_t trial) {
  const std::uint64_t blocking_key =
      options.common_random_numbers ? 0 : static_cast<std::uint64_t>(blocking) + 1;
  return derive_seed(options.seed, options.stream, blocking_key, trial);
}

std::array<double, 3> trial_observables(const GateModel& model, FluxMode mode,
                                        BlockingMode blocking, const EngineOptions& options,
                                        std::uint64_t trial) {
  RandomStream rng(trial_seed(options, blocking, trial));
  const SpecklePair speckle =
      apply_blocking(sample_speckle(rng, model.settings().mean_photons), blocking);
  return observables_of(detect(model, mode, speckle, rng));
}

RunResult estimate_rates(const InterferometerSettings& settings, std::uint64_t n_trials,
                         FluxMode mode, BlockingMode blocking, const EngineOptions& options) {
  require_trials(n_trials);
  const GateModel model(settings);
  const auto acc = run_batches<RunAccumulator>(
      n_trials, options.threads, [&](RunAccumulator& a, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
          const auto obs = trial_observables(model, mode, blocking, options, t);
          for (std::size_t i = 0; i < kObservables; ++i) a.moments[i].add(obs[i]);
        }
      });
  return make_result(settings, mode, blocking, acc.moments);
}

RunEstimate subtract_background(const RunResult& none, const RunResult& plus,
                                const RunResult& minus) {
  if (!(none.settings == plus.settings) || !(none.settings == minus.settings)) {
    throw std::invalid_argument("background runs must share settings");
  }
  if (none.mode != plus.mode || none.mode != minus.mode) {
    throw std::invalid_argument("background runs must share flux mode");
  }
  if (none.blocking != BlockingMode::none || plus.blocking != BlockingMode::block_plus ||
      minus.blocking != BlockingMode::block_minus) {
    throw std::invalid_argument("background runs must be (none, block_plus, block_minus)");
  }
  const Estimator id = none.mode == FluxMode::low ? Estimator::coincidence : Estimator::crosscorr;
  const RunEstimate& a = none.at(id);
  const RunEstimate& b = plus.at(id);
  const RunEstimate& c = minus.at(id);
  RunEstimate out;
  out.estimator = id;
  out.mean = a.mean - c.mean - b.mean;
  out.std_error = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error +
                            c.std_error * c.std_error);
  out.n_trials = std::min({a.n_trials, b.n_trials, c.n_trials});
  return out;
}

BackgroundSubtraction estimate_subtracted(const InterferometerSettings& settings,
                                          std::uint64_t n_trials, FluxMode mode,
                                          const EngineOptions& options) {
  require_trials(n_trials);
  BackgroundSubtraction out;
  const Estimator id = mode == FluxMode::low ? Estimator::coincidence : Estimator::crosscorr;
  if (!options.common_random_numbers) {
    out.run_none = estimate_rates(settings, n_trials, mode, BlockingMode::none, options);
    out.run_block_plus = estimate_rates(settings, n_trials, mode, BlockingMode::block_plus, options);
    out.run_block_minus =
        estimate_rates(settings, n_trials, mode, BlockingMode::block_minus, options);
    out.subtracted = subtract_background(out.run_none, out.run_block_plus, out.run_block_minus);
    const RunEstimate& b = out.run_block_plus.at(id);
    const RunEstimate& c = out.run_block_minus.at(id);
    out.self_correlation = {b.mean + c.mean,
                            std::sqrt(b.std_error * b.std_error + c.std_error * c.std_error),
                            n_trials, id};
    return out;
  }

  const GateModel model(settings);
  const auto acc = run_batches<PairedAccumulator>(
      n_trials, options.threads,
      [&](PairedAccumulator& a, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
          std::array<double, 3> joint{};
          for (std::size_t m = 0; m < kProtocol.size(); ++m) {
            const auto obs = trial_observables(model, mode, kProtocol[m], options, t);
            for (std::size_t i = 0; i < kObservables; ++i) a.per_mode[m][i].add(obs[i]);
            joint[m] = obs[2];
          }
          a.subtracted.add(joint[0] - joint[1] - joint[2]);
          a.self.add(joint[1] + joint[2]);
        }
      });
  out.paired = true;
  out.run_none = make_result(settings, mode, BlockingMode::none, acc.per_mode[0]);
  out.run_block_plus = make_result(settings, mode, BlockingMode::block_plus, acc.per_mode[1]);
  out.run_block_minus = make_result(settings, mode, BlockingMode::block_minus, acc.per_mode[2]);
  const double scale = unit_scales(settings, mode)[2];
  out.subtracted = {scale * acc.subtracted.mean(), scale * acc.subtracted.std_error(), n_trials,
                    id};
  out.self_correlation = {scale * acc.self.mean(), scale * acc.self.std_error(), n_trials, id};
  return out;
}

}  // namespace tbell
