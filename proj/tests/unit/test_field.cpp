#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "tbell/field.hpp"
#include "tbell/random.hpp"

namespace {

using cd = std::complex<double>;
using tbell::InterferometerSettings;
using tbell::SpecklePair;
using tbell::testing::gaussian_pulse;
using tbell::testing::PropertyRng;

constexpr double kPi = std::numbers::pi;

SpecklePair random_pair(PropertyRng& rng) {
  return {cd(rng.uniform(-2, 2), rng.uniform(-2, 2)), cd(rng.uniform(-2, 2), rng.uniform(-2, 2))};
}

void expect_complex_near(cd a, cd b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

TEST(FieldEnvelope, AnalyzerExtremes) {
  PropertyRng rng(3);
  InterferometerSettings s;
  s.delta_t = 0.7 * s.pulse.tau_p;
  const double tau = s.pulse.tau_p;
  for (int i = 0; i < 50; ++i) {
    const SpecklePair v = random_pair(rng);
    const double t = rng.uniform(-3, 3) * tau;
    const double fp = gaussian_pulse(tau, t + s.delta_t / 2);
    const double fm = gaussian_pulse(tau, t - s.delta_t / 2);
    const double scale = fp + fm;
    s.theta_A = 0.0;
    s.theta_B = 0.0;
    expect_complex_near(tbell::field_envelope_A(s, v, t), v.v_plus * fp / std::sqrt(2.0), 1e-12 * scale);
    expect_complex_near(tbell::field_envelope_B(s, v, t), v.v_plus * fp / std::sqrt(2.0), 1e-12 * scale);
    s.theta_A = kPi / 2;
    s.theta_B = kPi / 2;
    expect_complex_near(tbell::field_envelope_A(s, v, t), v.v_minus * fm / std::sqrt(2.0), 1e-12 * scale);
    expect_complex_near(tbell::field_envelope_B(s, v, t), -v.v_minus * fm / std::sqrt(2.0), 1e-12 * scale);
  }
}

TEST(FieldEnvelope, DiagonalAnalyzerRecombinesPulse) {
  InterferometerSettings s;
  s.theta_A = kPi / 4;
  s.delta_t = 0.0;
  const SpecklePair v{1.0, 1.0};
  for (double t : {-1e-12, 0.0, 2e-13}) {
    const double f = gaussian_pulse(s.pulse.tau_p, t);
    expect_complex_near(tbell::field_envelope_A(s, v, t), cd(f, 0.0), 1e-12 * f);
  }
}

TEST(FieldEnvelope, BeamSplitterUnitarity) {
  PropertyRng rng(4);
  for (int i = 0; i < 500; ++i) {
    InterferometerSettings s;
    s.theta_A = s.theta_B = rng.angle();
    s.delta_t = rng.uniform(-4e-12, 4e-12);
    const SpecklePair v = random_pair(rng);
    const double t = rng.uniform(-3e-12, 3e-12);
    const double fp = gaussian_pulse(s.pulse.tau_p, t + s.delta_t / 2);
    const double fm = gaussian_pulse(s.pulse.tau_p, t - s.delta_t / 2);
    const double c = std::cos(s.theta_A), sn = std::sin(s.theta_A);
    const double expected = c * c * std::norm(v.v_plus * fp) + sn * sn * std::norm(v.v_minus * fm);
    const double total = std::norm(tbell::field_envelope_A(s, v, t)) +
                         std::norm(tbell::field_envelope_B(s, v, t));
    EXPECT_NEAR(total, expected, 1e-12 * (std::norm(v.v_plus * fp) + std::norm(v.v_minus * fm)) + 1e-300);
  }
}

TEST(FieldEnvelope, EqualAnglesEqualAmplitudesConserveEnergy) {
  PropertyRng rng(5);
  for (int i = 0; i < 200; ++i) {
    InterferometerSettings s;
    s.theta_A = s.theta_B = rng.angle();
    s.delta_t = 0.0;
    const cd a(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const SpecklePair v{a, a};
    const double t = rng.uniform(-1e-12, 1e-12);
    const double f = gaussian_pulse(s.pulse.tau_p, t);
    const double total = std::norm(tbell::field_envelope_A(s, v, t)) +
                         std::norm(tbell::field_envelope_B(s, v, t));
    EXPECT_NEAR(total, std::norm(a) * f * f, 1e-12 * std::norm(a) * f * f);
  }
}

TEST(GatedEnergy, DarkInputIsZero) {
  InterferometerSettings s;
  const SpecklePair v{};
  EXPECT_EQ(tbell::gated_energy([&](double t) { return tbell::field_envelope_A(s, v, t); }, s), 0.0);
  EXPECT_EQ(tbell::gated_energy(tbell::gate_integrals(s), s, v, tbell::Detector::B), 0.0);
}

TEST(GatedEnergy, SinglePolarizationIsHalf) {
  InterferometerSettings s;
  s.theta_A = 0.0;
  const SpecklePair v{1.0, 0.0};
  const double e = tbell::gated_energy([&](double t) { return tbell::field_envelope_A(s, v, t); }, s);
  EXPECT_NEAR(e, 0.5, 1e-12);
}

TEST(GatedEnergy, MatchesDenseTrapezoid) {
  PropertyRng rng(6);
  for (int i = 0; i < 100; ++i) {
    InterferometerSettings s;
    s.theta_A = rng.angle();
    s.theta_B = rng.angle();
    s.delta_t = rng.uniform(-4e-12, 4e-12);
    s.pulse.tau_p = rng.uniform(100e-15, 1e-12);
    // Half the draws put the gate edge inside the pulse support.
    s.gate_T = (i % 2 == 0) ? 1e-9 : rng.uniform(2.0, 20.0) * s.pulse.tau_p;
    const SpecklePair v = random_pair(rng);
    for (auto det : {tbell::Detector::A, tbell::Detector::B}) {
      auto env = [&](double t) { return tbell::field_envelope(det, s, v, t); };
      const double half = std::abs(s.delta_t) / 2 + 8 * s.pulse.tau_p;
      const double lo = std::max(-s.gate_T / 2, -half), hi = std::min(s.gate_T / 2, half);
      auto integrand = [&](double t) { return std::norm(env(t)); };
      const bool truncated = hi < half;
      const double reference = truncated ? tbell::testing::romberg3(integrand, lo, hi, 2000)
                                         : tbell::testing::trapezoid(integrand, lo, hi, 2000);
      const double quad = tbell::gated_energy(env, s);
      const double form = tbell::gated_energy(tbell::gate_integrals(s), s, v, det);
      EXPECT_NEAR(quad / reference, 1.0, 1e-9) << "draw " << i;
      EXPECT_NEAR(form / reference, 1.0, 1e-9) << "draw " << i;
    }
  }
}

TEST(GateIntegrals, AsymptoticLimits) {
  InterferometerSettings s;
  s.delta_t = 1e-12;
  const auto g = tbell::gate_integrals(s);
  EXPECT_NEAR(g.plus_energy, 1.0, 1e-12);
  EXPECT_NEAR(g.minus_energy, 1.0, 1e-12);
  EXPECT_NEAR(g.cross_overlap, tbell::pulse_overlap(s.pulse, s.delta_t), 1e-12);
}

TEST(GateIntegrals, TruncatedGateMatchesErf) {
  InterferometerSettings s;
  s.gate_T = 2.0 * s.pulse.tau_p;
  const auto g = tbell::gate_integrals(s);
  const double expected = std::erf(std::sqrt(2.0) * (s.gate_T / 2) / s.pulse.tau_p);
  EXPECT_NEAR(g.plus_energy / expected, 1.0, 1e-12);
  EXPECT_NEAR(g.cross_overlap / expected, 1.0, 1e-12);
}

}  // namespace
