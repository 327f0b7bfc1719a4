#pragma once

#include <array>

#include "tbell/field.hpp"
#include "tbell/settings.hpp"

namespace tbell {

/// Closed-form singles and coincidence rates for gated photon counting.
/// Units are counts (or coincidences) per gate.
///
/// When the pulses do not sit well inside the gate (see check_regime) every
/// entry is computed from gate quadrature instead and `asymptotic` is false.
struct RateSet {
  double singles_A = 0.0;
  double singles_B = 0.0;
  double coincidence_full = 0.0;
  double self_correlation = 0.0;  // the two single-beam (<|v|^4>) terms
  double coincidence_subtracted = 0.0;
  bool asymptotic = true;
};

/// Mean photocurrents (A) and their zero-lag cross-correlation (A^2) for
/// shot-noise-limited photodiodes with a rectangular, acausal impulse response
/// h(t) = 1/T on |t| <= T/2.
struct PhotocurrentSet {
  double mean_A = 0.0;
  double mean_B = 0.0;
  double crosscorr_full = 0.0;
  double crosscorr_subtracted = 0.0;
  bool asymptotic = true;
};

/// The dimensionless interference factor shared by the low- and high-flux
/// background-subtracted signals:
///   sin^2(thA - thB) + sin(2 thA) sin(2 thB) / 2 * (1 - exp(-dt^2/tau_p^2)).
/// Always >= 0.
double interference_bracket(const InterferometerSettings& settings);

/// Per-gate single-detector count rate, eta N / 2 in the asymptotic regime.
double singles_rate(const InterferometerSettings& settings, Detector detector = Detector::A);

/// Background-subtracted coincidence rate, (eta N)^2 / 4 times the bracket.
double coincidence_subtracted(const InterferometerSettings& settings);

/// All five coincidence terms, with <|v|^4> = 2 N^2 closing the single-beam
/// terms: self_correlation = (eta N)^2 / 2 (cA^2 cB^2 + sA^2 sB^2).
RateSet coincidence_full(const InterferometerSettings& settings);

/// (max - min) / (max + min). Requires max >= min >= 0 and max > 0;
/// throws std::invalid_argument otherwise.
double visibility(double curve_max, double curve_min);

/// q eta N / (2 T).
double mean_photocurrent(const InterferometerSettings& settings, Detector detector = Detector::A);

PhotocurrentSet photocurrent_crosscorr(const InterferometerSettings& settings);

struct AnglePair {
  double theta_A = 0.0;
  double theta_B = 0.0;
};

using ChshAngles = std::array<AnglePair, 4>;

/// (0, pi/8), (0, 3pi/8), (pi/4, pi/8), (pi/4, 3pi/8).
ChshAngles canonical_chsh_angles();

/// The four analyzer settings entering one CHSH correlation, in the order
/// (a, b), (a+pi/2, b+pi/2), (a, b+pi/2), (a+pi/2, b).
std::array<AnglePair, 4> chsh_complements(AnglePair pair);

/// E = (C0 + C1 - C2 - C3) / (C0 + C1 + C2 + C3) for rates ordered as in
/// chsh_complements. Throws std::domain_error on a zero denominator.
double chsh_correlation(const std::array<double, 4>& rates);

/// S = |E1 - E2 + E3 + E4|.
double chsh_combine(const std::array<double, 4>& correlations);

/// CHSH S from background-subtracted coincidence rates at the four angle
/// pairs (angles in settings_base are ignored).
double chsh_s(const InterferometerSettings& settings_base, const ChshAngles& angles);

}  // namespace tbell
