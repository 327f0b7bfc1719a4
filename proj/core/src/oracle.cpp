#include "tbell/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tbell {

namespace {

struct Trig {
  double cA, sA, cB, sB;
};

Trig trig_of(const InterferometerSettings& s) {
  return {std::cos(s.theta_A), std::sin(s.theta_A), std::cos(s.theta_B), std::sin(s.theta_B)};
}

// Subtracted and self terms expressed through gate integrals; valid in and
// out of the asymptotic regime. Units of (eta N)^2.
double subtracted_terms(const Trig& t, const GateIntegrals& g) {
  return 0.25 * ((t.cA * t.cA * t.sB * t.sB + t.cB * t.cB * t.sA * t.sA) * g.plus_energy *
                     g.minus_energy -
                 2.0 * t.cA * t.cB * t.sA * t.sB * g.cross_overlap * g.cross_overlap);
}

double self_terms(const Trig& t, const GateIntegrals& g) {
  return 0.5 * (t.cA * t.cA * t.cB * t.cB * g.plus_energy * g.plus_energy +
                t.sA * t.sA * t.sB * t.sB * g.minus_energy * g.minus_energy);
}

double singles_terms(double theta, const GateIntegrals& g) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return 0.5 * (c * c * g.plus_energy + s * s * g.minus_energy);
}

}  // namespace

double interference_bracket(const InterferometerSettings& s) {
  const double diff = std::sin(s.theta_A - s.theta_B);
  const double x = s.delta_t / s.pulse.tau_p;
  return diff * diff +
         0.5 * std::sin(2.0 * s.theta_A) * std::sin(2.0 * s.theta_B) * -std::expm1(-x * x);
}

double singles_rate(const InterferometerSettings& s, Detector detector) {
  if (check_regime(s).asymptotic) return 0.5 * s.eta * s.mean_photons;
  const double theta = detector == Detector::A ? s.theta_A : s.theta_B;
  return s.eta * s.mean_photons * singles_terms(theta, gate_integrals(s));
}

double coincidence_subtracted(const InterferometerSettings& s) {
  const double scale = s.eta * s.eta * s.mean_photons * s.mean_photons;
  if (check_regime(s).asymptotic) return 0.25 * scale * interference_bracket(s);
  return scale * subtracted_terms(trig_of(s), gate_integrals(s));
}

RateSet coincidence_full(const InterferometerSettings& s) {
  const double en = s.eta * s.mean_photons;
  const double scale = en * en;
  const Trig t = trig_of(s);
  RateSet r;
  r.asymptotic = check_regime(s).asymptotic;
  if (r.asymptotic) {
    r.singles_A = r.singles_B = 0.5 * en;
    r.coincidence_subtracted = 0.25 * scale * interference_bracket(s);
    r.self_correlation = self_terms(t, GateIntegrals{});
  } else {
    const GateIntegrals g = gate_integrals(s);
    r.singles_A = en * singles_terms(s.theta_A, g);
    r.singles_B = en * singles_terms(s.theta_B, g);
    r.coincidence_subtracted = scale * subtracted_terms(t, g);
    r.self_correlation = self_terms(t, g);
  }
  r.self_correlation *= scale;
  r.coincidence_full = r.self_correlation + r.coincidence_subtracted;
  return r;
}

double visibility(double curve_max, double curve_min) {
  if (!(curve_max >= curve_min) || curve_min < 0.0) {
    throw std::invalid_argument("visibility requires max >= min >= 0");
  }
  const double sum = curve_max + curve_min;
  if (sum == 0.0) throw std::invalid_argument("visibility undefined for max + min = 0");
  return (curve_max - curve_min) / sum;
}

double mean_photocurrent(const InterferometerSettings& s, Detector detector) {
  return s.charge_q * singles_rate(s, detector) / s.gate_T;
}

PhotocurrentSet photocurrent_crosscorr(const InterferometerSettings& s) {
  const RateSet rates = coincidence_full(s);
  const double qt = s.charge_q / s.gate_T;
  const double qen = qt * s.eta * s.mean_photons;
  PhotocurrentSet p;
  p.asymptotic = rates.asymptotic;
  p.mean_A = qt * rates.singles_A;
  p.mean_B = qt * rates.singles_B;
  if (p.asymptotic) {
    p.crosscorr_subtracted = 0.25 * qen * qen * interference_bracket(s);
  } else {
    p.crosscorr_subtracted = qt * qt * rates.coincidence_subtracted;
  }
  p.crosscorr_full = p.crosscorr_subtracted + qt * qt * rates.self_correlation;
  return p;
}

ChshAngles canonical_chsh_angles() {
  constexpr double pi = std::numbers::pi;
  return {{{0.0, pi / 8.0}, {0.0, 3.0 * pi / 8.0}, {pi / 4.0, pi / 8.0},
           {pi / 4.0, 3.0 * pi / 8.0}}};
}

std::array<AnglePair, 4> chsh_complements(AnglePair p) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  return {{{p.theta_A, p.theta_B},
           {p.theta_A + half_pi, p.theta_B + half_pi},
           {p.theta_A, p.theta_B + half_pi},
           {p.theta_A + half_pi, p.theta_B}}};
}

double chsh_correlation(const std::array<double, 4>& c) {
  const double denominator = c[0] + c[1] + c[2] + c[3];
  if (denominator == 0.0) throw std::domain_error("CHSH correlation denominator is zero");
  return (c[0] + c[1] - c[2] - c[3]) / denominator;
}

double chsh_combine(const std::array<double, 4>& e) { return std::abs(e[0] - e[1] + e[2] + e[3]); }

double chsh_s(const InterferometerSettings& base, const ChshAngles& angles) {
  std::array<double, 4> correlations{};
  for (std::size_t i = 0; i < angles.size(); ++i) {
    std::array<double, 4> rates{};
    const auto combos = chsh_complements(angles[i]);
    for (std::size_t k = 0; k < combos.size(); ++k) {
      InterferometerSettings s = base;
      s.theta_A = combos[k].theta_A;
      s.theta_B = combos[k].theta_B;
      rates[k] = coincidence_subtracted(s);
    }
    try {
      correlations[i] = chsh_correlation(rates);
    } catch (const std::domain_error&) {
      std::ostringstream msg;
      msg << "CHSH denominator is zero for pair " << i + 1 << " (theta_A=" << angles[i].theta_A
          << ", theta_B=" << angles[i].theta_B << ")";
      throw std::domain_error(msg.str());
    }
  }
  return chsh_combine(correlations);
}

}  // namespace tbell
