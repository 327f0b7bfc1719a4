#include "tbell/settings.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tbell {

std::string_view to_string(FluxMode mode) { return mode == FluxMode::low ? "low" : "high"; }

FluxMode parse_flux_mode(std::string_view text) {
  if (text == "low") return FluxMode::low;
  if (text == "high") return FluxMode::high;
  throw std::invalid_argument("mode must be one of: low, high");
}

InterferometerSettings default_settings(FluxMode mode) {
  InterferometerSettings s;
  s.mean_photons =
      mode == FluxMode::low ? defaults::kLowFluxPhotons : defaults::kHighFluxPhotons;
  return s;
}

void validate(const InterferometerSettings& s) {
  auto require_finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
  };
  require_finite(s.theta_A, "theta_A");
  require_finite(s.theta_B, "theta_B");
  require_finite(s.delta_t, "delta_t");
  require_finite(s.mean_photons, "mean_photons");
  require_finite(s.eta, "eta");
  require_finite(s.gate_T, "gate_T");
  require_finite(s.charge_q, "charge_q");
  if (s.eta < 0.0 || s.eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
  if (s.mean_photons < 0.0) throw std::invalid_argument("mean_photons must be >= 0");
  if (s.gate_T <= 0.0) throw std::invalid_argument("gate_T must be > 0");
  if (s.charge_q <= 0.0) throw std::invalid_argument("charge_q must be > 0");
  validate(s.pulse);
}

RegimeCheck check_regime(const InterferometerSettings& s) {
  RegimeCheck check;
  check.support_half_width = support_half_width(s.pulse, s.delta_t);
  check.asymptotic = check.support_half_width <= 0.5 * s.gate_T;
  if (!check.asymptotic) {
    std::ostringstream msg;
    msg << "regime warning: |delta_t|/2 + 8 tau_p = " << check.support_half_width
        << " s exceeds gate_T/2 = " << 0.5 * s.gate_T
        << " s; closed-form rates replaced by gate quadrature";
    check.message = msg.str();
  }
  return check;
}

}  // namespace tbell
