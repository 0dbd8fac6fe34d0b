#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;
using liouville::cli::run;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("liouville_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
  }
  fs::path dir_;
};

TEST_F(Cli, TunedParams) {
  Result r = cli({"construct", "tuned-params", "--j", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["V"], "2980");
  EXPECT_EQ(j["B"], "8880400");
}

TEST_F(Cli, ConstructSpiffyLevels) {
  Result r = cli({"construct", "spiffy", "--schedule", "factorial:1", "--digits", "all2", "--levels", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  ASSERT_EQ(j["levels"].size(), 6u);
  EXPECT_EQ(j["levels"][0]["truncation"], "2/9");
  EXPECT_EQ(j["levels"][0]["exponent_lower"], "5/2");
  EXPECT_TRUE(j["spiffy"].get<bool>());
}

TEST_F(Cli, InvalidConfigsExitTwo) {
  EXPECT_EQ(cli({"construct", "spiffy", "--schedule", "nope", "--levels", "2"}).code, 2);
  EXPECT_EQ(cli({"construct", "spiffy", "--levels", "0"}).code, 2);
  EXPECT_EQ(cli({"construct", "tuned-params"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"scan", "--bmax", "5", "--tau", "x"}).code, 2);
  Result r = cli({"--precision", "4", "construct", "tuned-params", "--j", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "invalid-config");
}

TEST_F(Cli, PrecisionFromEnvironment) {
  ::setenv("LIOUVILLE_PRECISION", "junk", 1);
  EXPECT_EQ(cli({"construct", "tuned-params", "--j", "1"}).code, 2);
  ::setenv("LIOUVILLE_PRECISION", "128", 1);
  EXPECT_EQ(cli({"construct", "tuned-params", "--j", "1"}).code, 0);
  ::unsetenv("LIOUVILLE_PRECISION");
}

TEST_F(Cli, UnmaterializableExitsThree) {
  EXPECT_EQ(cli({"construct", "tuned-params", "--j", "100"}).code, 3);
}

TEST_F(Cli, SelfPowerRoundTrip) {
  ASSERT_EQ(cli({"construct", "jarnik", "--forced", "2^(2^n)", "--stages", "4", "--out", path("j.json")}).code, 0);
  Result c = cli({"certify", "selfpower", "--from", path("j.json"), "--stages", "4", "--target-N", "2",
                  "--out", path("c.json")});
  EXPECT_EQ(c.code, 0) << c.out << c.err;
  EXPECT_NE(c.out.find("N=2: stage 1"), std::string::npos);
  EXPECT_EQ(cli({"verify", path("c.json")}).code, 0);
  // unmet target: exit 1 with the table
  Result miss = cli({"certify", "selfpower", "--from", path("j.json"), "--stages", "4", "--target-N", "10",
                     "--out", path("c10.json")});
  EXPECT_EQ(miss.code, 1);
  EXPECT_NE(miss.out.find("N=10: not met"), std::string::npos);
}

TEST_F(Cli, PolyRationalEscape) {
  ASSERT_EQ(cli({"construct", "pair", "--schedule", "paper", "--x", "all2", "--y", "list:2,0;tail:2", "--out",
                 path("pair.json")})
                .code,
            0);
  Result r = cli({"certify", "poly", "--poly", "X-Y", "--inputs", path("pair.json"), "--m", "2", "--out",
                  path("p.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verdict: rational 2/7625597484987"), std::string::npos);
  EXPECT_EQ(cli({"verify", path("p.json")}).code, 0);
}

TEST_F(Cli, PairwiseAnchorMismatch) {
  ASSERT_EQ(cli({"construct", "pair", "--schedule", "factorial:1", "--y", "list:2,0;tail:2", "--out",
                 path("pair.json")})
                .code,
            0);
  Result r = cli({"certify", "pairwise", "--inputs", path("pair.json"), "--levels", "2,3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "anchor-mismatch");
}

TEST_F(Cli, VerifyTamperedAndTruncated) {
  ASSERT_EQ(cli({"construct", "jarnik", "--forced", "2^(2^n)", "--stages", "3", "--out", path("j.json")}).code, 0);
  cli({"certify", "selfpower", "--from", path("j.json"), "--stages", "3", "--out", path("c.json")});
  json doc = json::parse(slurp(path("c.json")));
  doc["stages"][1]["Q"] = "12345";
  std::ofstream(path("bad.json")) << doc.dump();
  Result r = cli({"verify", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("stage 2"), std::string::npos) << r.out;

  std::string text = slurp(path("c.json"));
  std::ofstream(path("trunc.json")) << text.substr(0, text.size() / 2);
  EXPECT_EQ(cli({"verify", path("trunc.json")}).code, 2);
  EXPECT_EQ(cli({"verify", path("missing.json")}).code, 2);
}

TEST_F(Cli, ScanExamples) {
  Result hit = cli({"scan", "--xi", "invert:3/4", "--tau", "3", "--bmax", "10"});
  ASSERT_EQ(hit.code, 0) << hit.err;
  EXPECT_EQ(hit.out, "a,b,gap_sign,certified_gap\n3,4,0,0/1\n");
  Result none = cli({"scan", "--xi", "rational:1/2", "--tau", "3", "--bmax", "50"});
  ASSERT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "a,b,gap_sign,certified_gap\n");
  Result empty = cli({"scan", "--bmax", "0"});
  ASSERT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "a,b,gap_sign,certified_gap\n");
  EXPECT_EQ(cli({"scan", "--xi", "rational:1/10", "--bmax", "5"}).code, 2);
}

TEST_F(Cli, ScanJobsDoNotChangeOutput) {
  Result one = cli({"scan", "--xi", "rational:7/10", "--tau", "5/2", "--bmax", "300", "--jobs", "1"});
  Result many = cli({"scan", "--xi", "rational:7/10", "--tau", "5/2", "--bmax", "300", "--jobs", "4"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, many.out);
  EXPECT_NE(one.out.find("67,86,1,"), std::string::npos);
}

TEST_F(Cli, OutputsAreDeterministic) {
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(cli({"construct", "jarnik", "--forced", "2^(2^n)", "--stages", "3", "--out", path("j.json")}).code, 0);
    cli({"certify", "selfpower", "--from", path("j.json"), "--stages", "3", "--out", path(name)});
  }
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(Cli, ReportTables) {
  ASSERT_EQ(cli({"construct", "jarnik", "--forced", "2^(2^n)", "--stages", "3", "--out", path("j.json")}).code, 0);
  Result r = cli({"report", path("j.json"), "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,index,forced_quotient,log_B,achieved_exponent");
  std::ofstream(path("x.json")) << R"({"type": "mystery"})";
  EXPECT_EQ(cli({"report", path("x.json")}).code, 2);
}

}  // namespace
