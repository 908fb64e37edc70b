#include <gtest/gtest.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string &args) {
  std::string cmd = std::string(STABLESEQ_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string golden(const std::string &name) {
  std::ifstream in(std::string(STABLESEQ_GOLDEN_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

struct GoldenCase {
  const char *file;
  const char *args;
  int code;
};

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, OutputIsByteStable) {
  const auto &c = GetParam();
  CliRun r = run(c.args);
  EXPECT_EQ(r.code, c.code);
  EXPECT_EQ(r.out, golden(c.file));
  EXPECT_EQ(run(c.args).out, r.out);
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"count_qd4.json", "count --graph qd:4 --format json", 0},
        GoldenCase{"count_aems.txt", "count --graph aems", 0},
        GoldenCase{"check_aems_unimodal.txt", "check --graph aems --property unimodal", 0},
        GoldenCase{"check_qd4_bgs.json",
                   "check --graph qd:4 --property bgs --beta 0 --gamma 1/5 --s 1 --format json", 0},
        GoldenCase{"bounds_qd3.csv", "bounds --graph qd:3 --format csv", 0},
        GoldenCase{"structure_d4.txt", "cube-structure --d 4 --set 0000,0011,0101", 0},
        GoldenCase{"structure_bounds_d4.csv", "cube-structure --d 4 --bounds --format csv", 0},
        GoldenCase{"window_d64.json", "cube-window --d 64 --t 4611686018427387904 --format json", 0},
        GoldenCase{"cases.csv", "cube-window --cases --format csv", 0},
        GoldenCase{"transition_d4.csv", "transition --d 4 --format csv", 0},
        GoldenCase{"percolate_small.csv",
                   "percolate --base knn:6,6 --trials 6 --seed 3 --s-rule fixed:2 --format csv", 0}),
    [](const auto &info) {
      std::string n = info.param.file;
      for (auto &ch : n)
        if (!std::isalnum(static_cast<unsigned char>(ch)))
          ch = '_';
      return n;
    });

TEST(CliExit, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("count").code, 2);
  EXPECT_EQ(run("count --graph nope:3").code, 2);
  EXPECT_EQ(run("count --graph qd:3 --format xml").code, 2);
  EXPECT_EQ(run("count --graph knn:40,40 --backend side").code, 2);
  EXPECT_EQ(run("check --graph aems --property bgs").code, 2);
  EXPECT_EQ(run("bounds --graph cycle:5").code, 2);
  EXPECT_EQ(run("cube-window --d 10").code, 2);
  EXPECT_EQ(run("percolate --s-rule sometimes").code, 2);
  EXPECT_EQ(run("verify-paper --only 13").code, 2);
}

TEST(CliExit, FinalThirdHoldsOnBipartite) {
  CliRun r = run("check --graph cycle:10 --property final-third");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict: holds"), std::string::npos);
}

TEST(CliExit, VerifySingleCriterion) {
  CliRun pass = run("verify-paper --only 1");
  EXPECT_EQ(pass.code, 0);
  EXPECT_EQ(pass.out.rfind("PASS [1]", 0), 0u);
  CliRun fail = run("verify-paper --only 8");
  EXPECT_EQ(fail.code, 1);
  EXPECT_EQ(fail.out.rfind("FAIL [8]", 0), 0u);
}

TEST(CliHelp, DescribesEveryVerb) {
  CliRun r = run("--help");
  EXPECT_EQ(r.code, 0);
  for (const char *verb : {"count", "bounds", "check", "cube-window", "cube-structure",
                           "transition", "percolate", "verify-paper"})
    EXPECT_NE(r.out.find(verb), std::string::npos) << verb;
}
