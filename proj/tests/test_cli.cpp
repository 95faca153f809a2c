#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbm/cli.hpp"

namespace {

using namespace fbm;
using namespace fbm::cli;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fbm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fbm::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

CliConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "fbm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

TEST(ParseArgs, Defaults) {
  const auto cfg = parse({"verify", "--suite", "thm3-gap", "--seed", "3"});
  EXPECT_EQ(cfg.subcommand, Subcommand::kVerify);
  EXPECT_DOUBLE_EQ(cfg.sim.hurst, 0.75);
  EXPECT_EQ(cfg.sim.steps, 16384u);
  EXPECT_EQ(cfg.sim.paths, 10000u);
  EXPECT_DOUBLE_EQ(cfg.sim.censor_horizon, 4.0);
  EXPECT_EQ(cfg.sim.master_seed, 3u);
}

TEST(ParseArgs, GridsAndScaledDefaults) {
  const auto cfg = parse({"verify", "--suite", "thm2-tail,thm3-gap", "--seed", "1", "--horizon",
                          "2", "--x-grid", "0.5,4", "--lambda-grid", "3"});
  EXPECT_EQ(cfg.sim.steps, 32768u);
  EXPECT_DOUBLE_EQ(cfg.sim.censor_horizon, 8.0);
  EXPECT_EQ(cfg.sim.x_grid, (std::vector<double>{0.5, 4.0}));
  EXPECT_EQ(cfg.sim.lambda_grid, (std::vector<double>{3.0}));
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"thm2-tail", "thm3-gap"}));
}

TEST(ParseArgs, AllExpandsByDomain) {
  const auto persistent = parse({"verify", "--suite", "all", "--seed", "1"});
  EXPECT_EQ(std::count(persistent.suites.begin(), persistent.suites.end(), "bm-sanity"), 0);
  EXPECT_EQ(std::count(persistent.suites.begin(), persistent.suites.end(), "thm1-moment"), 1);
  const auto brownian = parse({"verify", "--suite", "all", "--seed", "1", "--hurst", "0.5"});
  EXPECT_EQ(std::count(brownian.suites.begin(), brownian.suites.end(), "bm-sanity"), 1);
  EXPECT_EQ(std::count(brownian.suites.begin(), brownian.suites.end(), "thm1-moment"), 0);
}

TEST(ParseArgs, Errors) {
  try {
    parse({"verify", "--suite", "thm3-gap", "--seed", "1", "--hurst", "1.2"});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("0 < H < 1"), std::string::npos);
  }
  try {
    parse({"verify", "--suite", "nope", "--seed", "1"});
    FAIL();
  } catch (const UsageError& e) {
    const std::string msg = e.what();
    for (const auto& s : suite_names()) EXPECT_NE(msg.find(s), std::string::npos) << s;
  }
  EXPECT_THROW(parse({"verify", "--suite", "thm1-moment", "--seed", "1", "--hurst", "0.5"}),
               UsageError);
  EXPECT_THROW(parse({"verify", "--suite", "bm-sanity", "--seed", "1"}), UsageError);
  EXPECT_THROW(parse({"verify", "--suite", "thm3-gap"}), UsageError);
  EXPECT_THROW(parse({"verify", "--seed", "1"}), UsageError);
  EXPECT_THROW(parse({"generate", "--generator", "magic"}), UsageError);
  EXPECT_THROW(parse({"generate", "--generator", "cholesky", "--steps", "5000"}), UsageError);
  EXPECT_THROW(parse({"functionals", "--censor-horizon", "0.5"}), UsageError);
  EXPECT_THROW(parse({"bogus"}), UsageError);
}

TEST(Main, UsageExitCode) {
  const auto r = invoke({"verify", "--suite", "thm1-moment", "--seed", "1", "--hurst", "0.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("H > 1/2"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Main, GenerateCsv) {
  const auto r = invoke({"generate", "--steps", "8", "--seed", "4", "--hurst", "0.6"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,value");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
  EXPECT_EQ(invoke({"generate", "--steps", "8", "--seed", "4", "--hurst", "0.6"}).out, r.out);
  EXPECT_NE(invoke({"generate", "--steps", "8", "--seed", "4", "--hurst", "0.6", "--index", "1"}).out,
            r.out);
}

TEST(Main, FunctionalsFormats) {
  const auto csv = invoke({"functionals", "--steps", "64", "--paths", "5", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("sup,reflected_sup,", 0), 0u);
  const auto json = invoke({"functionals", "--steps", "64", "--paths", "5"});
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["records"].size(), 5u);
}

nlohmann::json strip_runtime(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  for (auto& r : j) r.erase("runtime_seconds");
  return j;
}

TEST(Main, VerifyIsReproducible) {
  const std::vector<std::string> args{"verify", "--suite", "thm3-gap", "--seed", "12",
                                      "--steps", "128", "--paths", "200"};
  auto a_args = args;
  a_args.insert(a_args.end(), {"--workers", "1"});
  auto b_args = args;
  b_args.insert(b_args.end(), {"--workers", "3"});
  const auto a = invoke(a_args);
  const auto b = invoke(b_args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_NE(a.code, 1);
  EXPECT_EQ(strip_runtime(a.out).dump(), strip_runtime(b.out).dump());
  EXPECT_NE(a.err.find("thm3-gap: "), std::string::npos);
}

TEST(Main, ExitCodeReflectsVerdicts) {
  const auto r = invoke({"verify", "--suite", "thm1-moment", "--seed", "2", "--steps", "256",
                         "--paths", "2000"});
  const auto j = nlohmann::json::parse(r.out);
  std::vector<VerificationReport> reports;
  for (const auto& item : j) {
    VerificationReport v;
    const std::string verdict = item["verdict"];
    v.verdict = verdict == "pass" ? Verdict::kPass
                                  : (verdict == "fail" ? Verdict::kFail : Verdict::kInconclusive);
    reports.push_back(v);
  }
  EXPECT_EQ(r.code, exit_code_for(reports));
}

TEST(Main, OutputFileAndIoFailure) {
  const auto dir = std::filesystem::temp_directory_path() / "fbm_cli_test";
  std::filesystem::create_directories(dir);
  const auto file = (dir / "path.csv").string();
  const auto ok = invoke({"generate", "--steps", "4", "--out", file});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.out.empty());
  EXPECT_TRUE(std::filesystem::exists(file));
  const auto bad = invoke({"generate", "--steps", "4", "--out", (dir / "missing" / "x.csv").string()});
  EXPECT_EQ(bad.code, 4);
  std::filesystem::remove_all(dir);
}

TEST(Main, ReportSubcommand) {
  const auto r = invoke({"report", "--steps", "128", "--paths", "150", "--seed", "3", "--sigma",
                         "0.3", "--drift", "0.05"});
  EXPECT_NE(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("quantile_table"));
  EXPECT_DOUBLE_EQ(j["params"]["model"]["volatility"].get<double>(), 0.3);
}

}  // namespace
