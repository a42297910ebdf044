#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "sudler/cfrac.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SUDLER_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  Run r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Cli, LimitFnGrid) {
  const auto r = run("limit-fn --period 1,4 --k 2 --eps -1:1:0.01");
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 203u);
  EXPECT_EQ(rows[0], "# schema=1");
  EXPECT_EQ(rows[1], "eps,value,T,tail_bound,flags");
  const auto mid = fields(rows[2 + 100]);
  EXPECT_EQ(std::stod(mid[0]), 0.0);
  EXPECT_LT(std::stod(mid[1]), 1.0);
}

TEST(Cli, SinglePointMatchesConstants) {
  const auto g = lines(run("limit-fn --period 2,5 --k 2 --eps 0:0:1").out);
  const auto c = lines(run("constants --period 2,5 --q-max 1000").out);
  ASSERT_EQ(g.size(), 3u);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(fields(g[2])[1], fields(c[3])[1]);
  EXPECT_LT(std::stod(fields(c[3])[1]), 1.0);
}

TEST(Cli, ZeroFlag) {
  const auto s = sudler::spectral(sudler::PeriodSpec{{1, 2}, 2});
  char eps[40];
  std::snprintf(eps, sizeof eps, "%.17g", -s.ckek.to_double());
  const auto rows = lines(run(std::string("limit-fn --period 1,2 --k 2 --eps=") + eps).out);
  ASSERT_EQ(rows.size(), 3u);
  const auto f = fields(rows[2]);
  EXPECT_EQ(std::stod(f[1]), 0.0);
  EXPECT_EQ(f[4], "zero");
}

TEST(Cli, BadGridIsUsageError) {
  EXPECT_EQ(run("limit-fn --period 1,4 --k 2 --eps=1:-1:0.1").code, 1);
  EXPECT_EQ(run("limit-fn --period 1,4 --k 2 --eps=0:1:0").code, 1);
  EXPECT_EQ(run("limit-fn --period 1,4 --k 2 --tol 0").code, 1);
  EXPECT_EQ(run("limit-fn --period 1,4 --k 3").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST(Cli, ConstantsPeriodOne) {
  const auto r = run("constants --period 1");
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], "k,C_closed,C_empirical,gap,q_n_used");
  EXPECT_LT(std::stod(fields(rows[2])[3]), 1e-4);
  EXPECT_EQ(lines(run("constants --period 1,2 --q-max 1000").out).size(), 4u);
}

TEST(Cli, ScanSmallestTuple) {
  const auto rows = lines(run("scan --ell 2 --max-digit 1").out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1], "digits,k_max,q_ell,C_kmax,upper_bound,verdict");
  EXPECT_EQ(fields(rows[2])[0], "1 1");
  EXPECT_EQ(fields(rows[2])[5], "ge_1_numeric");
  EXPECT_EQ(rows[3].rfind("# summary", 0), 0u);
}

TEST(Cli, ScanTwoDigitThresholds) {
  const auto r = run("scan --ell 2 --max-digit 6");
  ASSERT_EQ(r.code, 0);
  bool saw_14 = false, saw_13 = false;
  for (const auto& line : lines(r.out)) {
    const auto f = fields(line);
    if (f.size() < 6) continue;
    if (f[0] == "1 4") saw_14 = f[5] == "lt_1_numeric";
    if (f[0] == "1 3") saw_13 = f[5] == "ge_1_numeric";
  }
  EXPECT_TRUE(saw_14);
  EXPECT_TRUE(saw_13);
}

TEST(Cli, VerifyFiltersSuites) {
  const auto r = run("verify --suite qnrel");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"qnrel\""), std::string::npos);
  EXPECT_EQ(r.out.find("\"ckek\""), std::string::npos);
  EXPECT_NE(r.out.find("\"pass\": true"), std::string::npos);
}

TEST(Cli, VerifyRejectsDigitZero) {
  const auto r = run("verify --period 1,0");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, SudlerEmptyProduct) {
  const auto rows = lines(run("sudler --period 1 --N 0:0").out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], "N,P,logP");
  EXPECT_EQ(rows[2], "0,1,0");
}

TEST(Cli, SudlerRangeMatchesSinglePoints) {
  const auto range = lines(run("sudler --period 1,5 --N 1:2000").out);
  ASSERT_EQ(range.size(), 2002u);
  for (long n : {1L, 17L, 999L, 2000L}) {
    const auto one = lines(run("sudler --period 1,5 --N " + std::to_string(n) + ":" + std::to_string(n)).out);
    const double a = std::stod(fields(range[static_cast<std::size_t>(n) + 1])[2]);
    const double b = std::stod(fields(one[2])[2]);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::fabs(b))) << n;
  }
}

TEST(Cli, SudlerSubsequence) {
  const auto rows = lines(run("sudler --period 1 --subseq --k 1 --m 1:10").out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[1], "m,q_n,P,logP");
  EXPECT_EQ(fields(rows[11])[1], "89");
  EXPECT_NEAR(std::stod(fields(rows[11])[2]), 2.4071142357, 1e-2);
}

TEST(Cli, ByteIdenticalRuns) {
  for (const std::string args : {"limit-fn --period 1,4 --k 2 --eps=-1:1:0.05 --workers 2",
                                 "scan --ell 3 --max-digit 3 --workers 2", "constants --period 1,2 --q-max 5000"}) {
    EXPECT_EQ(run(args).out, run(args).out) << args;
  }
}

TEST(Cli, JsonFormat) {
  const auto r = run("constants --period 1,2 --q-max 1000 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"schema\": 1"), std::string::npos);
  EXPECT_EQ(run("constants --period 1 --format xml").code, 1);
}
