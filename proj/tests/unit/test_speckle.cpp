#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tbell/random.hpp"
#include "tbell/speckle.hpp"

namespace {

using tbell::RandomStream;
using tbell::testing::brute_moments;

constexpr std::size_t kSamples = 1'000'000;

struct Draws {
  std::vector<double> re_plus, im_plus, abs2_plus, abs4_plus, abs2_minus, abs4_minus;
  std::vector<double> v2_re, v2_im;          // v+^2
  std::vector<double> cross_re, cross_im;    // v+ v-*
};

Draws draw(double N, std::uint64_t seed) {
  RandomStream rng(seed);
  Draws d;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const auto s = tbell::sample_speckle(rng, N);
    const double p2 = std::norm(s.v_plus), m2 = std::norm(s.v_minus);
    d.re_plus.push_back(s.v_plus.real());
    d.im_plus.push_back(s.v_plus.imag());
    d.abs2_plus.push_back(p2);
    d.abs4_plus.push_back(p2 * p2);
    d.abs2_minus.push_back(m2);
    d.abs4_minus.push_back(m2 * m2);
    const auto sq = s.v_plus * s.v_plus;
    d.v2_re.push_back(sq.real());
    d.v2_im.push_back(sq.imag());
    const auto c = s.v_plus * std::conj(s.v_minus);
    d.cross_re.push_back(c.real());
    d.cross_im.push_back(c.imag());
  }
  return d;
}

void expect_within_3sigma(const std::vector<double>& xs, double expected, const char* what) {
  const auto m = brute_moments(xs);
  EXPECT_LE(std::abs(m.mean - expected), 3.0 * m.std_error)
      << what << ": mean " << m.mean << " vs " << expected << " (stderr " << m.std_error << ")";
}

TEST(SampleSpeckle, DarkSourceGivesExactZeros) {
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto s = tbell::sample_speckle(rng, 0.0);
    EXPECT_EQ(s.v_plus, std::complex<double>(0.0, 0.0));
    EXPECT_EQ(s.v_minus, std::complex<double>(0.0, 0.0));
  }
}

TEST(SampleSpeckle, RejectsInvalidPhotonNumber) {
  RandomStream rng(1);
  EXPECT_THROW(tbell::sample_speckle(rng, -1e-3), std::invalid_argument);
  EXPECT_THROW(tbell::sample_speckle(rng, std::nan("")), std::invalid_argument);
}

TEST(SampleSpeckle, MomentLadderUnitPower) {
  const Draws d = draw(1.0, 2024);
  const auto m2 = brute_moments(d.abs2_plus);
  EXPECT_GE(m2.mean, 0.997);
  EXPECT_LE(m2.mean, 1.003);
  const auto m4 = brute_moments(d.abs4_plus);
  EXPECT_NEAR(m4.mean, 2.0, 3.0 * std::sqrt(20.0) / 1e3);

  expect_within_3sigma(d.re_plus, 0.0, "Re v+");
  expect_within_3sigma(d.im_plus, 0.0, "Im v+");
  expect_within_3sigma(d.v2_re, 0.0, "Re v+^2");
  expect_within_3sigma(d.v2_im, 0.0, "Im v+^2");
  expect_within_3sigma(d.abs2_minus, 1.0, "|v-|^2");
  expect_within_3sigma(d.abs4_minus, 2.0, "|v-|^4");
}

TEST(SampleSpeckle, MomentLadderScalesWithPower) {
  const double N = 0.37;
  const Draws d = draw(N, 77);
  expect_within_3sigma(d.abs2_plus, N, "|v+|^2");
  expect_within_3sigma(d.abs4_plus, 2.0 * N * N, "|v+|^4");
}

TEST(SampleSpeckle, IsotropicAndIndependent) {
  const Draws d = draw(1.0, 31337);
  // Equal quadrature variances: <Re^2 - Im^2> = 0 is the same as Re <v^2> = 0.
  expect_within_3sigma(d.v2_re, 0.0, "Re^2 - Im^2");
  // Independence of v+ and v-: <v+ v-*> = 0 and <|v+|^2 |v-|^2> = N^2.
  expect_within_3sigma(d.cross_re, 0.0, "Re v+ v-*");
  expect_within_3sigma(d.cross_im, 0.0, "Im v+ v-*");
  std::vector<double> prod(kSamples);
  for (std::size_t i = 0; i < kSamples; ++i) prod[i] = d.abs2_plus[i] * d.abs2_minus[i];
  expect_within_3sigma(prod, 1.0, "|v+|^2 |v-|^2");
}

TEST(SampleSpeckle, DeterministicForSeed) {
  RandomStream a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    const auto x = tbell::sample_speckle(a, 2.5);
    const auto y = tbell::sample_speckle(b, 2.5);
    EXPECT_EQ(x.v_plus, y.v_plus);
    EXPECT_EQ(x.v_minus, y.v_minus);
  }
}

TEST(RandomStreams, DerivedSeedsDependOnEveryKey) {
  EXPECT_NE(tbell::derive_seed(1, 2, 3), tbell::derive_seed(1, 3, 2));
  EXPECT_NE(tbell::derive_seed(1, 2), tbell::derive_seed(2, 2));
  EXPECT_EQ(tbell::derive_seed(5, 6, 7), tbell::derive_seed(5, 6, 7));
  RandomStream r(0);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
