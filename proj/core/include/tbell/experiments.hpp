#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tbell/oracle.hpp"
#include "tbell/settings.hpp"

namespace tbell {

enum class Backend { oracle, mc };

/// What a scan curve's abscissa holds.
enum class ScanVariable { delta_t, angle_diff, theta_B };

std::string_view to_string(Backend backend);
std::string_view to_string(ScanVariable variable);
Backend parse_backend(std::string_view text);

struct ScanPoint {
  double x = 0.0;
  double y = 0.0;
  double yerr = 0.0;         // zero for the oracle
  bool regime_flag = false;  // point evaluated outside the asymptotic regime
};

/// Immutable result of a one-dimensional scan. Abscissae are strictly
/// increasing and errors non-negative; the constructor enforces both.
class ScanCurve {
 public:
  ScanCurve(ScanVariable variable, std::string estimator_id, InterferometerSettings snapshot,
            FluxMode mode, std::vector<ScanPoint> points, std::vector<std::string> warnings = {});

  ScanVariable variable() const { return variable_; }
  const std::string& estimator_id() const { return estimator_id_; }
  const InterferometerSettings& settings_snapshot() const { return snapshot_; }
  FluxMode mode() const { return mode_; }
  const std::vector<ScanPoint>& points() const { return points_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::vector<double> xs() const;
  std::vector<double> ys() const;
  std::vector<double> yerrs() const;

 private:
  ScanVariable variable_;
  std::string estimator_id_;
  InterferometerSettings snapshot_;
  FluxMode mode_;
  std::vector<ScanPoint> points_;
  std::vector<std::string> warnings_;
};

struct ExperimentOptions {
  Backend backend = Backend::oracle;
  FluxMode mode = FluxMode::low;
  std::uint64_t n_trials = 1'000'000;  // gates per blocking run per point
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool common_random_numbers = false;
};

/// Seed-derivation tags; a point's stream is derive_seed(tag, point_index).
enum class ExperimentTag : std::uint64_t { delay_scan = 1, polarization_scan = 2, chsh = 3,
                                           validation = 4 };

/// Above this mean photon number the low-flux MC rates drift from the
/// first-order closed forms.
inline constexpr double kLowFluxPhotonLimit = 0.1;

/// Warning text when an MC low-flux run uses N above kLowFluxPhotonLimit.
std::optional<std::string> low_flux_warning(const InterferometerSettings& settings,
                                            const ExperimentOptions& options);

/// `count` evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

/// A background-subtracted value with its standard error.
struct SignalEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Background-subtracted coincidence rate (low flux) or current
/// cross-correlation (high flux) at one setting, from the chosen backend.
SignalEstimate subtracted_signal(const InterferometerSettings& settings,
                                 const ExperimentOptions& options, ExperimentTag tag,
                                 std::uint64_t point_index);

/// Background-subtracted signal versus differential delay.
ScanCurve delay_scan(const InterferometerSettings& settings, std::span<const double> delta_t_grid,
                     const ExperimentOptions& options);

/// Background-subtracted signal versus analyzer angle theta_B at the fixed
/// theta_A of `settings`. Intended for delta_t = 0; other delays are allowed
/// but recorded as a curve warning.
ScanCurve polarization_scan(const InterferometerSettings& settings,
                            std::span<const double> theta_B_grid, const ExperimentOptions& options);

struct VisibilityEstimate {
  double visibility = 0.0;
  double std_error = 0.0;
  double curve_max = 0.0;
  double curve_min = 0.0;
  std::optional<double> width;        // delay scans only
  std::optional<double> width_error;
};

/// Fits the curve's model shape (Gaussian on a pedestal for delay scans, sin^2
/// fringe on a pedestal for angle scans) and returns (max - min)/(max + min)
/// of the fitted curve. Requires at least five points. Throws FitError when
/// the fit is singular and std::domain_error when the fitted mean level is not
/// positive.
VisibilityEstimate visibility_of_curve(const ScanCurve& curve);

struct ChshResult {
  double S = 0.0;
  double std_error = 0.0;
  ChshAngles angles{};
  std::array<double, 4> correlations{};
  std::array<double, 4> correlation_errors{};
  /// rates[i][k]: pair i, complement k in chsh_complements order.
  std::array<std::array<SignalEstimate, 4>, 4> rates{};
};

/// CHSH S from the 16 background-subtracted rates, errors by the delta method
/// assuming independent rate estimates. Throws std::domain_error naming the
/// pair whose correlation denominator vanishes.
ChshResult chsh_experiment(const InterferometerSettings& settings, const ExperimentOptions& options,
                           const ChshAngles& angles = canonical_chsh_angles());

}  // namespace tbell
