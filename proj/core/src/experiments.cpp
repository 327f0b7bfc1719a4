#include "tbell/experiments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tbell/fit.hpp"
#include "tbell/montecarlo.hpp"
#include "tbell/random.hpp"

namespace tbell {

std::string_view to_string(Backend backend) { return backend == Backend::oracle ? "oracle" : "mc"; }

std::string_view to_string(ScanVariable variable) {
  switch (variable) {
    case ScanVariable::delta_t: return "delta_t";
    case ScanVariable::angle_diff: return "angle_diff";
    case ScanVariable::theta_B: return "theta_B";
  }
  return "?";
}

Backend parse_backend(std::string_view text) {
  if (text == "oracle") return Backend::oracle;
  if (text == "mc") return Backend::mc;
  throw std::invalid_argument("backend must be one of: oracle, mc");
}

ScanCurve::ScanCurve(ScanVariable variable, std::string estimator_id,
                     InterferometerSettings snapshot, FluxMode mode, std::vector<ScanPoint> points,
                     std::vector<std::string> warnings)
    : variable_(variable),
      estimator_id_(std::move(estimator_id)),
      snapshot_(snapshot),
      mode_(mode),
      points_(std::move(points)),
      warnings_(std::move(warnings)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].yerr >= 0.0)) throw std::invalid_argument("scan yerr must be >= 0");
    if (i > 0 && !(points_[i].x > points_[i - 1].x)) {
      throw std::invalid_argument("scan abscissae must be strictly increasing");
    }
  }
}

std::vector<double> ScanCurve::xs() const {
  std::vector<double> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.x);
  return v;
}

std::vector<double> ScanCurve::ys() const {
  std::vector<double> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.y);
  return v;
}

std::vector<double> ScanCurve::yerrs() const {
  std::vector<double> v;
  v.reserve(points_.size());
  for (const auto& p : points_) v.push_back(p.yerr);
  return v;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  std::vector<double> v(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

SignalEstimate subtracted_signal(const InterferometerSettings& s, const ExperimentOptions& options,
                                 ExperimentTag tag, std::uint64_t point_index) {
  if (options.backend == Backend::oracle) {
    const double value = options.mode == FluxMode::low
                             ? coincidence_subtracted(s)
                             : photocurrent_crosscorr(s).crosscorr_subtracted;
    return {value, 0.0};
  }
  EngineOptions engine;
  engine.seed = options.seed;
  engine.stream = derive_seed(static_cast<std::uint64_t>(tag), point_index);
  engine.threads = options.threads;
  engine.common_random_numbers = options.common_random_numbers;
  const auto run = estimate_subtracted(s, options.n_trials, options.mode, engine);
  return {run.subtracted.mean, run.subtracted.std_error};
}

std::optional<std::string> low_flux_warning(const InterferometerSettings& s,
                                            const ExperimentOptions& options) {
  if (options.backend != Backend::mc || options.mode != FluxMode::low) return std::nullopt;
  if (s.mean_photons <= kLowFluxPhotonLimit) return std::nullopt;
  std::ostringstream msg;
  msg << "mean_photons = " << s.mean_photons << " exceeds " << kLowFluxPhotonLimit
      << "; low-flux rates pick up O(N) multi-photon corrections";
  return msg.str();
}

namespace {

std::string estimator_label(const ExperimentOptions& o) {
  return std::string(to_string(o.backend)) + "/" +
         (o.mode == FluxMode::low ? "coincidence_subtracted" : "crosscorr_subtracted");
}

template <typename Configure>
ScanCurve run_scan(ScanVariable variable, const InterferometerSettings& settings,
                   std::span<const double> grid, const ExperimentOptions& options,
                   ExperimentTag tag, std::vector<std::string> warnings, Configure configure) {
  validate(settings);
  if (auto w = low_flux_warning(settings, options)) warnings.push_back(*w);
  std::vector<ScanPoint> points;
  points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    InterferometerSettings s = settings;
    configure(s, grid[i]);
    const RegimeCheck regime = check_regime(s);
    if (!regime.asymptotic) warnings.push_back("point " + std::to_string(i) + ": " + regime.message);
    const SignalEstimate est = subtracted_signal(s, options, tag, i);
    points.push_back({grid[i], est.value, est.std_error, !regime.asymptotic});
  }
  return ScanCurve(variable, estimator_label(options), settings, options.mode, std::move(points),
                   std::move(warnings));
}

}  // namespace

ScanCurve delay_scan(const InterferometerSettings& settings, std::span<const double> grid,
                     const ExperimentOptions& options) {
  return run_scan(ScanVariable::delta_t, settings, grid, options, ExperimentTag::delay_scan, {},
                  [](InterferometerSettings& s, double x) { s.delta_t = x; });
}

ScanCurve polarization_scan(const InterferometerSettings& settings, std::span<const double> grid,
                            const ExperimentOptions& options) {
  std::vector<std::string> warnings;
  if (settings.delta_t != 0.0) {
    warnings.emplace_back("delta_t != 0: fringe includes the delay-dependent term");
  }
  return run_scan(ScanVariable::theta_B, settings, grid, options, ExperimentTag::polarization_scan,
                  std::move(warnings), [](InterferometerSettings& s, double x) { s.theta_B = x; });
}

VisibilityEstimate visibility_of_curve(const ScanCurve& curve) {
  if (curve.points().size() < 5) throw std::invalid_argument("visibility fit needs >= 5 points");
  const auto x = curve.xs();
  const auto y = curve.ys();
  const auto yerr = curve.yerrs();
  VisibilityEstimate out;
  if (curve.variable() == ScanVariable::delta_t) {
    const GaussianFit fit = fit_gaussian_on_pedestal(x, y, yerr);
    // The shape factor spans [0, 1], so the fitted extremes are a and a + b.
    const double a = fit.pedestal;
    const double b = fit.amplitude;
    const double level = 2.0 * a + b;
    if (!(level > 0.0)) throw std::domain_error("fitted curve has non-positive mean level");
    out.curve_max = std::max(a, a + b);
    out.curve_min = std::min(a, a + b);
    out.visibility = std::abs(b) / level;
    const double sign = b >= 0.0 ? 1.0 : -1.0;
    const double da = -2.0 * std::abs(b) / (level * level);
    const double db = sign * 2.0 * a / (level * level);
    const auto& c = fit.covariance;
    const double var = da * da * c[0][0] + 2.0 * da * db * c[0][1] + db * db * c[1][1];
    out.std_error = std::sqrt(std::max(0.0, var));
    if (fit.width_identified) {
      out.width = fit.width;
      out.width_error = std::sqrt(std::max(0.0, c[2][2]));
    }
    return out;
  }
  const SinusoidFit fit = fit_sinusoid_on_pedestal(x, y, yerr);
  const double r = std::hypot(fit.cos_coeff, fit.sin_coeff);
  if (!(fit.mean > 0.0)) throw std::domain_error("fitted curve has non-positive mean level");
  out.curve_max = fit.mean + r;
  out.curve_min = fit.mean - r;
  out.visibility = r / fit.mean;
  const auto& c = fit.covariance;
  double var = 0.0;
  if (r > 0.0) {
    const std::array<double, 3> g = {-r / (fit.mean * fit.mean), fit.cos_coeff / (r * fit.mean),
                                     fit.sin_coeff / (r * fit.mean)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) var += g[i] * g[j] * c[i][j];
    }
  } else {
    var = (c[1][1] + c[2][2]) / (fit.mean * fit.mean);
  }
  out.std_error = std::sqrt(std::max(0.0, var));
  return out;
}

ChshResult chsh_experiment(const InterferometerSettings& settings, const ExperimentOptions& options,
                           const ChshAngles& angles) {
  validate(settings);
  ChshResult out;
  out.angles = angles;
  constexpr std::array<double, 4> kSign = {1.0, 1.0, -1.0, -1.0};
  constexpr std::array<double, 4> kWeight = {1.0, -1.0, 1.0, 1.0};
  double signed_sum = 0.0;
  double var_s = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto combos = chsh_complements(angles[i]);
    std::array<double, 4> values{};
    for (std::size_t k = 0; k < combos.size(); ++k) {
      InterferometerSettings s = settings;
      s.theta_A = combos[k].theta_A;
      s.theta_B = combos[k].theta_B;
      out.rates[i][k] = subtracted_signal(s, options, ExperimentTag::chsh, 4 * i + k);
      values[k] = out.rates[i][k].value;
    }
    const double denominator = values[0] + values[1] + values[2] + values[3];
    if (denominator == 0.0) {
      std::ostringstream msg;
      msg << "CHSH denominator is zero for pair " << i + 1 << " (theta_A=" << angles[i].theta_A
          << ", theta_B=" << angles[i].theta_B << ")";
      throw std::domain_error(msg.str());
    }
    const double e = chsh_correlation(values);
    double var_e = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double grad = (kSign[k] - e) / denominator;
      var_e += grad * grad * out.rates[i][k].std_error * out.rates[i][k].std_error;
    }
    out.correlations[i] = e;
    out.correlation_errors[i] = std::sqrt(var_e);
    signed_sum += kWeight[i] * e;
    var_s += var_e;
  }
  out.S = std::abs(signed_sum);
  out.std_error = std::sqrt(var_s);
  return out;
}

}  // namespace tbell
