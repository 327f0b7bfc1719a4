#pragma once

#include <complex>

#include "tbell/random.hpp"

namespace tbell {

/// One realization of the two arm speckle amplitudes. Constant over a gate.
struct SpecklePair {
  std::complex<double> v_plus{};
  std::complex<double> v_minus{};
};

/// Draws v+ and v- as independent circular complex Gaussians with
/// <|v|^2> = mean_photons (real and imaginary parts each of variance N/2).
/// Consumes the stream in the fixed order Re v+, Im v+, Re v-, Im v-.
/// Throws std::invalid_argument for negative or non-finite N.
SpecklePair sample_speckle(RandomStream& rng, double mean_photons);

}  // namespace tbell
