#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "tbell/io/config.hpp"
#include "tbell/io/runner.hpp"

namespace tbell::io {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class RunnerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tbell_runner_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig config(const std::string& text, const std::string& out_name) {
    RunConfig c = load_config(text);
    c.output_path = (dir_ / out_name).string();
    return c;
  }

  ExitCode run_quiet(const RunConfig& c) {
    out_.str("");
    err_.str("");
    return run(c, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(RunnerTest, ScanDelayWritesCurveAndSidecar) {
  const auto c = config("experiment = scan-delay\n", "dip.csv");
  ASSERT_EQ(run_quiet(c), ExitCode::ok);
  const std::string csv = slurp(c.output_path);
  EXPECT_EQ(csv.rfind("x,y,yerr\n", 0), 0u);
  EXPECT_EQ(count_lines(csv), 82u);
  const auto meta = nlohmann::json::parse(slurp(c.output_path + ".meta.json"));
  EXPECT_EQ(meta["experiment"], "scan-delay");
  EXPECT_TRUE(meta.contains("wall_time_s"));
  EXPECT_NE(out_.str().find("wrote 81 points"), std::string::npos);
}

TEST_F(RunnerTest, McOutputIsByteIdenticalAcrossRerunsAndThreads) {
  for (const char* format : {"csv", "json"}) {
    std::vector<std::string> bodies;
    for (unsigned threads : {1u, 1u, 3u}) {
      auto c = config(std::string("experiment = scan-delay\nbackend = mc\nn_trials = 4000\n"
                                  "grid_count = 7\nmean_photons = 0.05\nseed = 11\nformat = ") +
                          format + "\n",
                      std::string("run.") + format);
      c.threads = threads;
      ASSERT_EQ(run_quiet(c), ExitCode::ok);
      bodies.push_back(slurp(c.output_path));
    }
    EXPECT_EQ(bodies[0], bodies[1]) << format;
    EXPECT_EQ(bodies[0], bodies[2]) << format;
  }
}

TEST_F(RunnerTest, StrictRegimeViolationExitsWithoutWriting) {
  auto c = config("experiment = scan-delay\ngate_T = 4e-12\n", "short.csv");
  c.strict = true;
  EXPECT_EQ(run_quiet(c), ExitCode::regime_violation);
  EXPECT_FALSE(fs::exists(c.output_path));
  EXPECT_NE(err_.str().find("error:"), std::string::npos);

  c.strict = false;
  EXPECT_EQ(run_quiet(c), ExitCode::ok);
  EXPECT_TRUE(fs::exists(c.output_path));
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(RunnerTest, UnwritableOutputIsAnIoError) {
  auto c = config("experiment = chsh\n", "x");
  c.output_path = (dir_ / "missing" / "dir" / "out.csv").string();
  EXPECT_EQ(run_quiet(c), ExitCode::io_error);
}

TEST_F(RunnerTest, InvalidConfigIsAUsageError) {
  auto c = config("experiment = chsh\n", "x");
  c.settings.eta = 2.0;
  EXPECT_EQ(run_quiet(c), ExitCode::usage);
  EXPECT_NE(err_.str().find("eta"), std::string::npos);
}

TEST_F(RunnerTest, ChshJsonCarriesS) {
  const auto c = config("experiment = chsh\nformat = json\n", "chsh.json");
  ASSERT_EQ(run_quiet(c), ExitCode::ok);
  const auto doc = nlohmann::json::parse(slurp(c.output_path));
  EXPECT_NEAR(doc["result"]["S"].get<double>(), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(doc["metadata"].contains("wall_time_s"));
  EXPECT_EQ(doc["result"]["pairs"].size(), 4u);
}

TEST_F(RunnerTest, PlotScriptOnRequest) {
  auto c = config("experiment = scan-angle\ntheta_A = 0\n", "fringe.csv");
  c.emit_plot_script = true;
  ASSERT_EQ(run_quiet(c), ExitCode::ok);
  const std::string script = slurp(c.output_path + ".plot.py");
  EXPECT_NE(script.find("matplotlib"), std::string::npos);
  EXPECT_NE(script.find("theta_B"), std::string::npos);
}

TEST_F(RunnerTest, ValidateReportsEveryCheck) {
  const auto c = config("experiment = validate\nn_trials = 2000\n", "validate.csv");
  const ExitCode code = run_quiet(c);
  EXPECT_TRUE(code == ExitCode::ok || code == ExitCode::validation_failed);
  EXPECT_EQ(count_lines(out_.str()), 4u);
  EXPECT_EQ(slurp(c.output_path).rfind("check,passed,worst_ratio,points\n", 0), 0u);
}

}  // namespace
}  // namespace tbell::io
