#pragma once

#include <complex>
#include <functional>

#include "tbell/settings.hpp"
#include "tbell/speckle.hpp"

namespace tbell {

enum class Detector { A, B };

/// Complex envelope at detector A:
/// [cos(theta_A) v+ f(t + dt/2) + sin(theta_A) v- f(t - dt/2)] / sqrt(2).
std::complex<double> field_envelope_A(const InterferometerSettings& settings,
                                      const SpecklePair& speckle, double t);

/// Complex envelope at detector B. The v- term enters with a minus sign
/// (the second beam splitter's reflection phase).
std::complex<double> field_envelope_B(const InterferometerSettings& settings,
                                      const SpecklePair& speckle, double t);

std::complex<double> field_envelope(Detector detector, const InterferometerSettings& settings,
                                    const SpecklePair& speckle, double t);

using EnvelopeFn = std::function<std::complex<double>(double)>;

/// Photon-number energy of an envelope inside the gate, integral of |E(t)|^2
/// over [-T/2, T/2] restricted to the pulse support. Adaptive Gauss-Kronrod.
double gated_energy(const EnvelopeFn& envelope, const InterferometerSettings& settings);

/// The three gated pulse integrals that every intensity in the model reduces
/// to, since the envelopes are linear in (v+, v-) with real pulse shapes:
///   plus_energy   = integral of f(t + dt/2)^2
///   minus_energy  = integral of f(t - dt/2)^2
///   cross_overlap = integral of f(t + dt/2) f(t - dt/2)
/// all over the gate. Each tends to its ungated value (1, 1, overlap) when the
/// pulses sit well inside the gate.
struct GateIntegrals {
  double plus_energy = 1.0;
  double minus_energy = 1.0;
  double cross_overlap = 1.0;
};

GateIntegrals gate_integrals(const InterferometerSettings& settings);

/// gated_energy evaluated as the quadratic form in (v+, v-) over precomputed
/// gate integrals; agrees with the envelope quadrature to rounding.
double gated_energy(const GateIntegrals& integrals, const InterferometerSettings& settings,
                    const SpecklePair& speckle, Detector detector);

namespace detail {
/// Integral of g over the gate intersected with the pulse support.
double integrate_gated(const std::function<double(double)>& g,
                       const InterferometerSettings& settings);
}  // namespace detail

}  // namespace tbell
