#include "resonance/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "resonance/io.hpp"
#include "resonance/run_config.hpp"

namespace resonance::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "resonance");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("resonance_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("RESONANCE_OUTPUT_DIR");
  }
  void TearDown() override {
    unsetenv("RESONANCE_OUTPUT_DIR");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ConvertPrintsTargetConvention) {
  const auto r = invoke({"convert", "--from", "onshell", "--m", "91.1875", "--gamma", "2.4952", "--to", "polesqrt"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("convention = polesqrt"), std::string::npos);
  const auto pos = r.out.find("mass = ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 7)), 91.1620, 0.002);
  EXPECT_NE(r.out.find("lifetime_s = "), std::string::npos);
}

TEST_F(CliTest, ValidationErrorsExitWithOne) {
  EXPECT_EQ(invoke({"convert", "--m", "-1"}).code, kValidationError);
  EXPECT_EQ(invoke({"convert", "--to", "sideways"}).code, kValidationError);
  EXPECT_EQ(invoke({"nosuchcommand"}).code, kValidationError);
  EXPECT_EQ(invoke({}).code, kValidationError);
  EXPECT_EQ(invoke({"evolve", "--gamma", "0", "--out", path("e.csv")}).code, kValidationError);
  EXPECT_EQ(invoke({"survival", "--steps", "0", "--out", path("s.csv")}).code, kValidationError);
}

TEST_F(CliTest, IoErrorsExitWithThree) {
  EXPECT_EQ(invoke({"fit", "--data", path("missing.csv")}).code, kIoError);
  EXPECT_EQ(invoke({"--config", path("missing.toml"), "convert"}).code, kIoError);
  write_text_file(path("blocker"), "file");
  EXPECT_EQ(invoke({"survival", "--steps", "2", "--out", path("blocker/s.csv")}).code, kIoError);
}

TEST_F(CliTest, MalformedDataIsAValidationError) {
  write_text_file(path("bad.csv"), "x,sigma,sigma_err\n1,zz,1\n");
  EXPECT_EQ(invoke({"fit", "--data", path("bad.csv")}).code, kValidationError);
}

TEST_F(CliTest, NonConvergedFitExitsWithTwo) {
  ASSERT_EQ(invoke({"synth", "--points", "80", "--out", path("d.csv")}).code, kOk);
  const auto r = invoke({"fit", "--data", path("d.csv"), "--m", "90.5", "--gamma", "3.5", "--max-iter", "1",
                         "--out", path("r.toml")});
  EXPECT_EQ(r.code, kNumericalFailure) << r.out << r.err;
  EXPECT_NE(read_text_file(path("r.toml")).find("max_iterations"), std::string::npos);
}

TEST_F(CliTest, SynthFitRoundTrip) {
  ASSERT_EQ(invoke({"synth", "--seed", "42", "--out", path("d.csv")}).code, kOk);
  const auto r = invoke({"fit", "--data", path("d.csv"), "--m", "91.0", "--gamma", "2.3", "--out", path("r.toml")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("status = converged"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("r.toml")));
}

TEST_F(CliTest, OutputsAreByteReproducible) {
  for (const char* name : {"a", "b"}) {
    const std::string suffix(name);
    ASSERT_EQ(invoke({"synth", "--seed", "5", "--out", path("d" + suffix + ".csv")}).code, kOk);
    ASSERT_EQ(invoke({"fit", "--data", path("d" + suffix + ".csv"), "--out", path("r" + suffix + ".toml")}).code, kOk);
    ASSERT_EQ(invoke({"evolve", "--order", "3", "--steps", "20", "--out", path("e" + suffix + ".csv")}).code, kOk);
    ASSERT_EQ(invoke({"survival", "--steps", "20", "--out", path("s" + suffix + ".csv")}).code, kOk);
  }
  for (const char* stem : {"d", "e", "s"}) {
    EXPECT_EQ(read_text_file(path(std::string(stem) + "a.csv")), read_text_file(path(std::string(stem) + "b.csv")));
  }
  EXPECT_EQ(read_text_file(path("ra.toml")), read_text_file(path("rb.toml")));
  EXPECT_NE(read_text_file(path("da.csv")), "");
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  RunConfig config;
  config.survival.steps = 10;
  config.survival.t_max = 40.0;
  config.survival.method = SurvivalMethod::ExponentialIntegral;
  config.survival.out = path("from_config.csv");
  write_text_file(path("run.toml"), serialize_run_config(config));

  ASSERT_EQ(invoke({"--config", path("run.toml"), "survival"}).code, kOk);
  const std::string text = read_text_file(path("from_config.csv"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 12);

  ASSERT_EQ(invoke({"--config", path("run.toml"), "survival", "--steps", "4"}).code, kOk);
  const std::string overridden = read_text_file(path("from_config.csv"));
  EXPECT_EQ(std::count(overridden.begin(), overridden.end(), '\n'), 6);

  write_text_file(path("bad.toml"), "[survival]\nwobble = 1\n");
  EXPECT_EQ(invoke({"--config", path("bad.toml"), "survival"}).code, kValidationError);
}

TEST_F(CliTest, OutputDirectoryFromFlagAndEnvironment) {
  ASSERT_EQ(invoke({"--output-dir", path("flag"), "survival", "--steps", "2", "--out", "s.csv"}).code, kOk);
  EXPECT_TRUE(fs::exists(dir_ / "flag" / "s.csv"));
  setenv("RESONANCE_OUTPUT_DIR", path("env").c_str(), 1);
  ASSERT_EQ(invoke({"survival", "--steps", "2", "--out", "s.csv"}).code, kOk);
  EXPECT_TRUE(fs::exists(dir_ / "env" / "s.csv"));
}

TEST_F(CliTest, EvolveColumnsAndDecay) {
  ASSERT_EQ(invoke({"evolve", "--order", "2", "--t-max", "2", "--steps", "2", "--out", path("e.csv")}).code, kOk);
  const std::string text = read_text_file(path("e.csv"));
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,gamma_t,exponential,w0_norm,w1_norm,wpt_norm,ket0_norm,ket1_norm");
}

TEST_F(CliTest, HelpExitsCleanly) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("survival"), std::string::npos);
}

}  // namespace
}  // namespace resonance::cli
