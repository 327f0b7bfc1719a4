#include "tbell/field.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace tbell {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kQuadratureTolerance = 1e-13;
constexpr unsigned kQuadratureMaxDepth = 12;
constexpr double kMinPanel = 0.5;  // in units of tau_p

}  // namespace

std::complex<double> field_envelope_A(const InterferometerSettings& s, const SpecklePair& v,
                                      double t) {
  const double f_plus = pulse_value(s.pulse, t + 0.5 * s.delta_t);
  const double f_minus = pulse_value(s.pulse, t - 0.5 * s.delta_t);
  return (std::cos(s.theta_A) * f_plus * v.v_plus + std::sin(s.theta_A) * f_minus * v.v_minus) *
         kInvSqrt2;
}

std::complex<double> field_envelope_B(const InterferometerSettings& s, const SpecklePair& v,
                                      double t) {
  const double f_plus = pulse_value(s.pulse, t + 0.5 * s.delta_t);
  const double f_minus = pulse_value(s.pulse, t - 0.5 * s.delta_t);
  return (std::cos(s.theta_B) * f_plus * v.v_plus - std::sin(s.theta_B) * f_minus * v.v_minus) *
         kInvSqrt2;
}

std::complex<double> field_envelope(Detector detector, const InterferometerSettings& s,
                                    const SpecklePair& v, double t) {
  return detector == Detector::A ? field_envelope_A(s, v, t) : field_envelope_B(s, v, t);
}

namespace detail {

double integrate_gated(const std::function<double(double)>& g, const InterferometerSettings& s) {
  const double half_support = support_half_width(s.pulse, s.delta_t);
  const double lo = std::max(-0.5 * s.gate_T, -half_support);
  const double hi = std::min(0.5 * s.gate_T, half_support);
  if (!(lo < hi)) return 0.0;
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
  // Integrate in units of tau_p: the error estimate misbehaves on
  // femtosecond-length intervals.
  const double tau = s.pulse.tau_p;
  auto scaled = [&](double u) { return g(u * tau); };
  const double c = 0.5 * std::abs(s.delta_t) / tau;
  const double a0 = lo / tau, b0 = hi / tau;
  // Split at the pulse centres so each panel holds at most one peak edge,
  // but never leave a panel narrower than half a pulse width.
  double total = 0.0;
  double a = a0;
  for (double cut : {-c, c}) {
    if (cut - a >= kMinPanel && b0 - cut >= kMinPanel) {
      total += Quadrature::integrate(scaled, a, cut, kQuadratureMaxDepth, kQuadratureTolerance);
      a = cut;
    }
  }
  total += Quadrature::integrate(scaled, a, b0, kQuadratureMaxDepth, kQuadratureTolerance);
  return total * tau;
}

}  // namespace detail

double gated_energy(const EnvelopeFn& envelope, const InterferometerSettings& s) {
  return detail::integrate_gated([&](double t) { return std::norm(envelope(t)); }, s);
}

GateIntegrals gate_integrals(const InterferometerSettings& s) {
  const double half = 0.5 * s.delta_t;
  GateIntegrals g;
  g.plus_energy = detail::integrate_gated(
      [&](double t) {
        const double f = pulse_value(s.pulse, t + half);
        return f * f;
      },
      s);
  g.minus_energy = detail::integrate_gated(
      [&](double t) {
        const double f = pulse_value(s.pulse, t - half);
        return f * f;
      },
      s);
  g.cross_overlap = detail::integrate_gated(
      [&](double t) { return pulse_value(s.pulse, t + half) * pulse_value(s.pulse, t - half); },
      s);
  return g;
}

double gated_energy(const GateIntegrals& g, const InterferometerSettings& s,
                    const SpecklePair& v, Detector detector) {
  const double theta = detector == Detector::A ? s.theta_A : s.theta_B;
  const double sign = detector == Detector::A ? 1.0 : -1.0;
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double interference = std::real(v.v_plus * std::conj(v.v_minus));
  return 0.5 * (c * c * std::norm(v.v_plus) * g.plus_energy +
                sn * sn * std::norm(v.v_minus) * g.minus_energy +
                2.0 * sign * c * sn * interference * g.cross_overlap);
}

}  // namespace tbell
