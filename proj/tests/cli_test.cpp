#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "arlog/cli.hpp"
#include "json.hpp"

namespace arlog::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
  nlohmann::json error() const { return nlohmann::json::parse(err); }
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"arlog"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, XiTableValue) {
  const auto r = invoke({"constants", "xi", "--rho", "0.7", "--digits", "20"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.json()["value"], "1.52783735828651737636");
  EXPECT_EQ(r.json()["rho"], "0.7");
}

TEST(Cli, Mode) {
  const auto r = invoke({"dist", "mode"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.json()["value"], "0.57186419860436852975");
}

TEST(Cli, RhoOutOfRange) {
  const auto r = invoke({"constants", "xi", "--rho", "1.2"});
  EXPECT_EQ(r.code, kInvalid);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
  EXPECT_EQ(r.error()["code"], 2);
  EXPECT_EQ(r.error()["message"], "rho out of range");
}

TEST(Cli, RejectsUnknownAndMalformed) {
  EXPECT_EQ(invoke({"constants", "xi", "--rho", "0.5", "--frobnicate"}).code, kInvalid);
  EXPECT_EQ(invoke({"constants", "xi"}).code, kInvalid);
  EXPECT_EQ(invoke({"constants", "xi", "--rho", "0.5x"}).code, kInvalid);
  EXPECT_EQ(invoke({"constants", "xi", "--rho", "0.5", "--digits", "41"}).code, kInvalid);
  EXPECT_EQ(invoke({"constants", "xi", "--rho", "0.5", "--digits", "0"}).code, kInvalid);
  EXPECT_EQ(invoke({"dist", "quantile", "--p", "1"}).code, kInvalid);
  EXPECT_EQ(invoke({"nonsense"}).code, kInvalid);
  EXPECT_EQ(invoke({}).code, kInvalid);
  EXPECT_EQ(invoke({"simulate", "--model", "viswanath", "--n", "10", "--coeffs", "1,1"}).code, kInvalid);
  EXPECT_EQ(invoke({"simulate", "--model", "ar-m", "--n", "10"}).code, kInvalid);
  EXPECT_EQ(invoke({"simulate", "--model", "nonstationary-ar1", "--rho", "0.5", "--n", "10"}).code, kInvalid);
  EXPECT_EQ(invoke({"simulate", "--model", "viswanath", "--n", "10", "--reps", "2", "--series"}).code, kInvalid);
}

TEST(Cli, DigitsRenderExactly) {
  for (int d = 1; d <= 40; ++d) {
    const auto r = invoke({"constants", "xi", "--rho", "0.3", "--digits", std::to_string(d)});
    ASSERT_EQ(r.code, kOk) << r.err;
    const std::string v = r.json()["value"];
    ASSERT_EQ(v.size() - v.find('.') - 1, static_cast<std::size_t>(d)) << v;
  }
  EXPECT_EQ(invoke({"constants", "xi", "--rho", "0.3", "--digits", "3"}).json()["value"], "1.156");
}

TEST(Cli, TruncatedRendering) {
  const auto r = invoke({"dist", "quantile", "--p", "0.25", "--rounding", "truncate"});
  EXPECT_EQ(r.json()["value"], "-0.45782337329420373497");
  const auto rounded = invoke({"dist", "quantile", "--p", "0.25"});
  EXPECT_EQ(rounded.json()["value"], "-0.45782337329420373498");
}

TEST(Cli, OtherConstants) {
  EXPECT_EQ(invoke({"constants", "eta", "--theta", "1"}).json()["value"], "0.81146307722510340753");
  const auto ms = invoke({"constants", "mu-sigma", "--digits", "10"}).json();
  EXPECT_EQ(ms["mu"], "-0.6351814227");
  EXPECT_EQ(ms["sigma"], "1.1107207345");
  const auto fv = invoke({"constants", "finite-var", "--rho", "0", "--n", "100", "--digits", "10"});
  EXPECT_EQ(fv.json()["value"], "1.2337005501");  // pi^2/8
  EXPECT_EQ(invoke({"constants", "eta", "--theta", "-1"}).code, kInvalid);
}

TEST(Cli, Distribution) {
  const auto cdf = invoke({"dist", "cdf", "--x", "0.21732071404060381038", "--digits", "15"});
  EXPECT_EQ(cdf.json()["value"], "0.500000000000000");
  const auto m = invoke({"dist", "moments", "--rounding", "truncate"}).json();
  EXPECT_EQ(m["skewness"], "-1.53514159072290597506");
  EXPECT_EQ(m["excess_kurtosis"], "4.00000000000000000000");
  EXPECT_EQ(invoke({"dist", "pdf", "--x", "0"}).code, kOk);
}

TEST(Cli, CsvOutput) {
  const auto r = invoke({"--format", "csv", "dist", "mode", "--digits", "5"});
  EXPECT_EQ(r.out, "command,digits,rounding,value\ndist mode,5,nearest,0.57186\n");
  const auto after = invoke({"dist", "mode", "--digits", "5", "--format", "csv"});
  EXPECT_EQ(after.out, r.out);
}

TEST(Cli, SimulateSeriesAndSeedEcho) {
  const auto r = invoke({"simulate", "--model", "stationary-ar1", "--rho", "0.5", "--n", "25", "--series"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["seed"], 0);
  ASSERT_EQ(j["series"].size(), 25u);
  EXPECT_EQ(j["series"][24]["ln_abs_x"], j["ln_abs_final"]);

  const auto csv = invoke({"simulate", "--model", "viswanath", "--n", "5", "--series", "--format", "csv", "--seed", "4"});
  EXPECT_EQ(csv.out.substr(0, 15), "t,ln_abs_x,sign");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 6);
}

TEST(Cli, SimulateReplicates) {
  const auto a = invoke({"simulate", "--model", "nonstationary-ar1", "--rho", "1.5", "--n", "30", "--reps", "500",
                         "--seed", "8", "--values", "--threads", "1"});
  const auto b = invoke({"simulate", "--model", "nonstationary-ar1", "--rho", "1.5", "--n", "30", "--reps", "500",
                         "--seed", "8", "--values", "--threads", "3"});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["ln_abs_final"].size(), 500u);
  const auto exact = invoke({"simulate", "--model", "nonstationary-ar1", "--rho", "1.5", "--n", "30", "--reps", "500",
                             "--method", "exact"});
  EXPECT_EQ(exact.code, kOk);
  EXPECT_EQ(invoke({"simulate", "--model", "viswanath", "--n", "30", "--method", "exact"}).code, kInvalid);
}

TEST(Cli, ExperimentVerdictsAndExitCodes) {
  const auto region = invoke({"experiment", "ar2-region"});
  ASSERT_EQ(region.code, kOk) << region.err;
  EXPECT_TRUE(region.json()["passed"].get<bool>());

  const auto strict = invoke({"experiment", "lyapunov", "--model", "nonstationary-ar1", "--rho", "1.5", "--n", "200",
                              "--reps", "5", "--tolerance", "1e-9"});
  EXPECT_EQ(strict.code, kVerdictFailed);
  EXPECT_FALSE(strict.json()["passed"].get<bool>());

  const auto stable = invoke({"experiment", "lyapunov", "--model", "ar-m", "--coeffs", "0,0.5"});
  EXPECT_EQ(stable.code, kInvalid);
  EXPECT_NE(stable.error()["message"].get<std::string>().find("spectral radius"), std::string::npos);
}

TEST(Cli, ExperimentDeterministicAcrossThreads) {
  const auto a = invoke({"experiment", "residuals", "--rho", "3", "--n", "10", "--reps", "4000", "--seed", "5",
                         "--threads", "1"});
  const auto b = invoke({"experiment", "residuals", "--rho", "3", "--n", "10", "--reps", "4000", "--seed", "5",
                         "--threads", "4"});
  ASSERT_EQ(a.code, kOk) << a.err << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["seed"], 5);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "arlog_cli_output.json";
  const auto r = invoke({"dist", "mode", "--output", path});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(nlohmann::json::parse(ss.str())["value"], "0.57186419860436852975");
  std::remove(path.c_str());
  EXPECT_EQ(invoke({"dist", "mode", "--output", "/nonexistent-dir/x.json"}).code, kInvalid);
}

TEST(Cli, Help) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("constants"), std::string::npos);
}

}  // namespace
}  // namespace arlog::cli
