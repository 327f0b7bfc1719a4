#pragma once

namespace tbell {

namespace defaults {
inline constexpr double kPulseDuration = 345e-15;  // s, post-filter
inline constexpr double kWavelength = 780e-9;      // m
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kCarrierFrequency =
    2.0 * 3.14159265358979323846 * kSpeedOfLight / kWavelength;  // rad/s
}  // namespace defaults

/// Number of pulse durations either side of the pulse centre that the
/// quadrature treats as the pulse's support.
inline constexpr double kSupportHalfWidthInTau = 8.0;

/// Transform-limited Gaussian pulse envelope.
///
/// The carrier frequency is carried for completeness only: it cancels in
/// every intensity the library computes.
struct PulseModel {
  double tau_p = defaults::kPulseDuration;
  double omega_0 = defaults::kCarrierFrequency;

  friend bool operator==(const PulseModel&, const PulseModel&) = default;
};

/// Throws std::invalid_argument unless tau_p is finite and positive.
void validate(const PulseModel& pulse);

/// f(t) = exp(-t^2/tau_p^2) / (pi tau_p^2 / 2)^(1/4), normalised so that
/// the integral of f^2 over the real line is one. Units: s^(-1/2).
double pulse_value(const PulseModel& pulse, double t);

/// Overlap of the two arm envelopes, integral of f(t + dt/2) f(t - dt/2) over
/// the real line, i.e. exp(-dt^2 / (2 tau_p^2)).
double pulse_overlap(const PulseModel& pulse, double delta_t);

/// Half-width |dt|/2 + 8 tau_p of the interval that holds both arm pulses.
double support_half_width(const PulseModel& pulse, double delta_t);

}  // namespace tbell
