#pragma once

#include <numbers>
#include <string>
#include <string_view>

#include "tbell/pulse.hpp"

namespace tbell {

/// Low flux: gated photon counting. High flux: PIN photocurrents.
enum class FluxMode { low, high };

std::string_view to_string(FluxMode mode);
FluxMode parse_flux_mode(std::string_view text);

namespace defaults {
inline constexpr double kGateDuration = 1e-9;             // s
inline constexpr double kQuantumEfficiency = 0.5;
inline constexpr double kLowFluxPhotons = 0.01;
inline constexpr double kHighFluxPhotons = 100.0;
inline constexpr double kElectronCharge = 1.602176634e-19;  // C
inline constexpr double kDelayScanSpan = 4e-12;            // s, scans cover +/- this
}  // namespace defaults

/// Every physical parameter of the interferometer. Angles in radians,
/// times in seconds, charge in coulombs.
struct InterferometerSettings {
  double theta_A = std::numbers::pi / 4.0;
  double theta_B = std::numbers::pi / 4.0;
  double delta_t = 0.0;
  double mean_photons = defaults::kLowFluxPhotons;
  double eta = defaults::kQuantumEfficiency;
  double gate_T = defaults::kGateDuration;
  double charge_q = defaults::kElectronCharge;
  PulseModel pulse{};

  friend bool operator==(const InterferometerSettings&, const InterferometerSettings&) = default;
};

InterferometerSettings default_settings(FluxMode mode);

/// Throws std::invalid_argument naming the offending field.
void validate(const InterferometerSettings& settings);

/// Whether both arm pulses sit well inside the coincidence gate, which is
/// what the closed-form rates assume.
struct RegimeCheck {
  bool asymptotic = true;
  double support_half_width = 0.0;  // |dt|/2 + 8 tau_p
  std::string message;              // empty when asymptotic
};

RegimeCheck check_regime(const InterferometerSettings& settings);

}  // namespace tbell
