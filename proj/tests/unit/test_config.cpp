#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tbell/io/config.hpp"

namespace {

using tbell::io::ConfigError;
using tbell::io::load_config;

std::string error_of(std::string_view text) {
  try {
    load_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(LoadConfig, MinimalConfigTakesDefaults) {
  const auto c = load_config("experiment = scan-delay\n");
  EXPECT_EQ(c.experiment, tbell::io::ExperimentKind::scan_delay);
  EXPECT_EQ(c.backend, tbell::Backend::oracle);
  EXPECT_EQ(c.mode, tbell::FluxMode::low);
  EXPECT_EQ(c.settings.pulse.tau_p, 345e-15);
  EXPECT_EQ(c.settings.gate_T, 1e-9);
  EXPECT_EQ(c.settings.eta, 0.5);
  EXPECT_EQ(c.settings.mean_photons, 0.01);
  EXPECT_EQ(c.settings.charge_q, 1.602176634e-19);
  EXPECT_EQ(c.grid.count, 81u);
  EXPECT_EQ(c.grid.start, -4e-12);
  EXPECT_EQ(c.grid.stop, 4e-12);
  EXPECT_EQ(c.n_trials, 1'000'000u);
}

TEST(LoadConfig, ModeDependentDefaults) {
  const auto c = load_config("experiment = scan-angle\nmode = high\n");
  EXPECT_EQ(c.settings.mean_photons, 100.0);
  EXPECT_EQ(c.n_trials, 100'000u);
  EXPECT_EQ(c.grid.count, 37u);
  EXPECT_EQ(c.grid.stop, std::numbers::pi);
  const auto explicit_n = load_config("mode = high\nmean_photons = 7\n");
  EXPECT_EQ(explicit_n.settings.mean_photons, 7.0);
}

TEST(LoadConfig, ValidationErrorsNameFieldAndLine) {
  const auto msg = error_of("experiment = chsh\neta = 1.5\n");
  EXPECT_NE(msg.find("eta must lie in [0,1]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(error_of("mean_photons = -1\n").find("mean_photons"), std::string::npos);
  EXPECT_NE(error_of("gate_T = 0\n").find("gate_T"), std::string::npos);
  EXPECT_NE(error_of("tau_p = -3\n").find("tau_p"), std::string::npos);
}

TEST(LoadConfig, StrictParsing) {
  EXPECT_NE(error_of("# header\n\ntheta_a = 1\n").find("line 3: unknown key 'theta_a'"), std::string::npos);
  EXPECT_NE(error_of("eta = 0.5\neta = 0.4\n").find("line 2: duplicate key"), std::string::npos);
  EXPECT_NE(error_of("eta 0.5\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("eta = half\n").find("expected a number"), std::string::npos);
  EXPECT_NE(error_of("seed = -4\n").find("unsigned"), std::string::npos);
  EXPECT_NE(error_of("backend = gpu\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("eta =\n").find("missing value"), std::string::npos);
  EXPECT_NE(error_of("common_random_numbers = maybe\n").find("true or false"), std::string::npos);
}

TEST(LoadConfig, CommentsAndWhitespace) {
  const auto c = load_config("  # comment\n\ttheta_A = 0.25   # trailing\r\nseed=42\n");
  EXPECT_EQ(c.settings.theta_A, 0.25);
  EXPECT_EQ(c.seed, 42u);
}

TEST(LoadConfig, GridValidation) {
  EXPECT_FALSE(error_of("grid_start = 1\ngrid_stop = 0\ngrid_count = 5\n").empty());
  EXPECT_FALSE(error_of("grid_count = 0\n").empty());
  EXPECT_FALSE(error_of("backend = mc\nn_trials = 1\n").empty());
}

TEST(EmitConfig, RoundTripsExactly) {
  const auto c = load_config("tau_p = 345e-15\n");
  const auto again = load_config(tbell::io::emit_config(c));
  EXPECT_EQ(again.settings.pulse.tau_p, 345e-15);
  EXPECT_EQ(again.settings, c.settings);

  tbell::testing::PropertyRng rng(50);
  for (int i = 0; i < 300; ++i) {
    tbell::io::RunConfig r;
    r.experiment = static_cast<tbell::io::ExperimentKind>(rng.next() % 4);
    r.backend = rng.next() % 2 ? tbell::Backend::mc : tbell::Backend::oracle;
    r.mode = rng.next() % 2 ? tbell::FluxMode::high : tbell::FluxMode::low;
    r.settings.theta_A = rng.angle();
    r.settings.theta_B = rng.angle() * 1e-7;
    r.settings.delta_t = rng.uniform(-4e-12, 4e-12);
    r.settings.mean_photons = rng.uniform(0, 1e3);
    r.settings.eta = rng.uniform(0, 1);
    r.settings.gate_T = rng.uniform(1e-10, 1e-8);
    r.settings.charge_q = rng.uniform(1e-19, 2e-19);
    r.settings.pulse.tau_p = rng.uniform(1e-15, 1e-12);
    r.settings.pulse.omega_0 = rng.uniform(1e14, 1e16);
    r.n_trials = 2 + rng.next() % 100000;
    r.seed = rng.next();
    r.grid = {rng.uniform(-1, 0), rng.uniform(0.1, 1), 2 + rng.next() % 100};
    r.output_path = "out_" + std::to_string(i) + ".csv";
    r.format = rng.next() % 2 ? tbell::io::OutputFormat::json : tbell::io::OutputFormat::csv;
    r.common_random_numbers = rng.next() % 2;
    r.threads = static_cast<unsigned>(rng.next() % 8);
    const auto back = load_config(tbell::io::emit_config(r));
    EXPECT_EQ(back.settings, r.settings);
    EXPECT_EQ(back.experiment, r.experiment);
    EXPECT_EQ(back.backend, r.backend);
    EXPECT_EQ(back.mode, r.mode);
    EXPECT_EQ(back.n_trials, r.n_trials);
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_EQ(back.grid.start, r.grid.start);
    EXPECT_EQ(back.grid.stop, r.grid.stop);
    EXPECT_EQ(back.grid.count, r.grid.count);
    EXPECT_EQ(back.output_path, r.output_path);
    EXPECT_EQ(back.format, r.format);
    EXPECT_EQ(back.common_random_numbers, r.common_random_numbers);
    EXPECT_EQ(back.threads, r.threads);
    EXPECT_EQ(tbell::io::emit_config(back), tbell::io::emit_config(r));
  }
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(tbell::io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(tbell::io::format_double(0.0), "0");
  EXPECT_EQ(tbell::io::format_double(-4e-12), "-3.9999999999999999e-12");
}

}  // namespace
