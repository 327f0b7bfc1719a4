#pragma once

#include <array>
#include <span>
#include <stdexcept>

namespace tbell {

/// Singular normal equations or an unidentifiable model; distinct from bad
/// input data, which raises std::invalid_argument.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Covariance3 = std::array<std::array<double, 3>, 3>;

/// y = pedestal + amplitude * exp(-x^2 / width^2)
struct GaussianFit {
  double pedestal = 0.0;
  double amplitude = 0.0;
  double width = 0.0;
  /// Parameter order (pedestal, amplitude, width). When the width is not
  /// identified (zero amplitude) its row and column are zero.
  Covariance3 covariance{};
  bool width_identified = false;
};

/// y = mean + cos_coeff * cos(2x) + sin_coeff * sin(2x), i.e. a sin^2 fringe
/// of period pi on a pedestal.
struct SinusoidFit {
  double mean = 0.0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
  Covariance3 covariance{};
};

/// Ordinary least squares. The covariance is the sandwich estimate built from
/// the per-point standard errors, so exact (zero-error) data yields a zero
/// covariance and points with unequal errors are still fitted without bias.
GaussianFit fit_gaussian_on_pedestal(std::span<const double> x, std::span<const double> y,
                                     std::span<const double> yerr);

SinusoidFit fit_sinusoid_on_pedestal(std::span<const double> x, std::span<const double> y,
                                     std::span<const double> yerr);

}  // namespace tbell
