#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli_app.hpp"

using namespace mpw;
using mpw::cli::run_cli;

namespace {

struct CliRun {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "mpw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mpw_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, DescribeA1n4) {
  const CliRun r = run({"describe", "--type", "A1", "--n", "4", "--Q", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json d = r.doc();
  EXPECT_EQ(d["structure"]["gamma_order"], 2);
  EXPECT_EQ(d["structure"]["positive_coroots"][0]["n_alpha"], 4);
  EXPECT_EQ(d["config"]["type"], "A1");
}

TEST(Cli, WhittakerVanishesOffDominant) {
  const CliRun r = run({"whittaker", "--type", "A1", "--n", "1", "--Q", "1", "--lambda", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json d = r.doc();
  EXPECT_FALSE(d["dominant"].get<bool>());
  EXPECT_TRUE(ratfunc_from_json(d["value"]).is_zero());
}

TEST(Cli, CfunMatchesLibrary) {
  const CliRun r = run({"cfun", "--type", "A2", "--n", "2", "--Q", "1", "--word", "s1,s2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = make_cover("A2", 2, {1});
  const RatFunc expect = c_w(m, m.datum().from_word({0, 1}));
  EXPECT_EQ(ratfunc_from_json(r.doc()["c"]), expect);
}

TEST(Cli, NpolyReportsFinalTheorem) {
  const CliRun r = run({"npoly", "--type", "A2", "--n", "2", "--Q", "1", "--lambda", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.doc()["final_theorem"].get<bool>());
  EXPECT_TRUE(r.doc()["polynomial"].get<bool>());
}

TEST(Cli, CheckA2n2Passes) {
  const CliRun r = run({"check", "--type", "A2", "--n", "2", "--Q", "1,1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(r.doc()["all_passed"].get<bool>());
  EXPECT_NE(r.err.find("PASS"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  EXPECT_EQ(run({"describe", "--type", "Z9", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"describe", "--type", "B2", "--n", "2", "--Q", "1"}).code, 2);
  EXPECT_EQ(run({"describe", "--type", "A2", "--n", "2", "--Q", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"describe", "--type", "A2", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"describe", "--type", "A2", "--n", "2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"whittaker", "--type", "A2", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"whittaker", "--type", "A2", "--n", "2", "--lambda", "1"}).code, 2);
  EXPECT_EQ(run({"cfun", "--type", "A2", "--n", "2", "--word", "s3"}).code, 2);
  EXPECT_EQ(run({"describe", "--bogus"}).code, 2);
  EXPECT_EQ(run({"describe"}).code, 2);
  const CliRun bad = run({"describe", "--type", "A2", "--n", "2", "--Q", "1,2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args : {
           std::vector<std::string>{"whittaker", "--type", "A2", "--n", "2", "--lambda", "1,1"},
           std::vector<std::string>{"check", "--type", "A1", "--n", "2", "--numeric", "--seed", "7", "--trials", "20"},
       }) {
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ConfigFileAndFlagOverride) {
  const auto path = temp_file("cfg.json");
  {
    std::ofstream o(path);
    o << R"({"type": "A2", "n": 2, "Q": [1, 1], "lambda": [1, 1], "format": "json"})";
  }
  const CliRun a = run({"whittaker", "--config", path.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.doc()["lambda"], json::array({1, 1}));
  const CliRun b = run({"whittaker", "--config", path.string(), "--lambda", "2,0"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.doc()["lambda"], json::array({2, 0}));
  EXPECT_EQ(b.doc()["config"]["n"], 2);
  EXPECT_EQ(run({"whittaker", "--config", (path.string() + ".missing")}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, ActInputRoundTripIsInvolutive) {
  const auto path = temp_file("act.json");
  const CliRun first = run({"act", "--type", "A2", "--n", "3", "--word", "s1", "--lambda", "2,-1", "--output", path.string()});
  ASSERT_EQ(first.code, 0) << first.err;
  const CliRun second = run({"act", "--type", "A2", "--n", "3", "--word", "s1", "--input", path.string()});
  ASSERT_EQ(second.code, 0) << second.err;
  EXPECT_EQ(ratfunc_from_json(second.doc()["result"]), RatFunc::monomial(LatticeVector{2, -1}));
  std::filesystem::remove(path);
}

TEST(Cli, LatexAndTextFormats) {
  const CliRun l = run({"cfun", "--type", "A1", "--n", "1", "--word", "1", "--format", "latex"});
  ASSERT_EQ(l.code, 0);
  EXPECT_EQ(l.out.rfind("c_{", 0), 0u);
  const CliRun t = run({"describe", "--type", "A1", "--n", "2", "--format", "text"});
  ASSERT_EQ(t.code, 0);
  EXPECT_FALSE(t.out.empty());
}
