#include "tbell/speckle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tbell {

SpecklePair sample_speckle(RandomStream& rng, double mean_photons) {
  if (!std::isfinite(mean_photons) || mean_photons < 0.0) {
    throw std::invalid_argument("mean_photons must be finite and >= 0");
  }
  const double sigma = std::sqrt(0.5 * mean_photons);
  std::normal_distribution<double> normal;
  const double re_p = normal(rng);
  const double im_p = normal(rng);
  const double re_m = normal(rng);
  const double im_m = normal(rng);
  return {{sigma * re_p, sigma * im_p}, {sigma * re_m, sigma * im_m}};
}

}  // namespace tbell
