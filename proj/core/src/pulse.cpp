#include "tbell/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tbell {

void validate(const PulseModel& pulse) {
  if (!std::isfinite(pulse.tau_p) || pulse.tau_p <= 0.0) {
    throw std::invalid_argument("tau_p must be finite and > 0");
  }
}

double pulse_value(const PulseModel& pulse, double t) {
  const double tau = pulse.tau_p;
  const double norm = std::pow(std::numbers::pi * tau * tau / 2.0, -0.25);
  const double x = t / tau;
  return norm * std::exp(-x * x);
}

double pulse_overlap(const PulseModel& pulse, double delta_t) {
  const double x = delta_t / pulse.tau_p;
  return std::exp(-0.5 * x * x);
}

double support_half_width(const PulseModel& pulse, double delta_t) {
  return 0.5 * std::abs(delta_t) + kSupportHalfWidthInTau * pulse.tau_p;
}

}  // namespace tbell
