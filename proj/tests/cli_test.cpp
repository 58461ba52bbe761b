#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Invocation {
  std::string out;
  int code = -1;
};

Invocation run(const std::string& arguments) {
  const std::string command = std::string(LIESYM_CLI) + " " + arguments + " 2>/dev/null";
  Invocation result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --pde gze1 --case A --field X3").code, 0);
  EXPECT_EQ(run("verify --pde gze1 --field \"t; 0; 0\"").code, 1);
  EXPECT_EQ(run("verify --pde gze3 --field X1").code, 2);
  EXPECT_EQ(run("verify --pde gze1 --case Q --field X1").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("classify --format yaml").code, 2);
}

TEST(Cli, JsonReportCarriesResultAndNotices) {
  const Invocation r = run("verify --pde gze2 --case I --field Y5 --format json");
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report.at("result"), r.code == 0 ? "pass" : "fail");
  EXPECT_TRUE(report.contains("notices"));
  EXPECT_EQ(report.at("command"), "verify --pde gze2 --case I --field Y5 --format json");
}

TEST(Cli, TablesInEveryFormat) {
  for (const std::string format : {"text", "json", "latex"}) {
    const Invocation r = run("commutators --pde gze1 --case A --format " + format);
    EXPECT_EQ(r.code, 0) << format;
    EXPECT_FALSE(r.out.empty()) << format;
  }
  EXPECT_NE(run("adjoint --pde gze1 --case A --format latex").out.find("\\begin{tabular}"),
            std::string::npos);
}

TEST(Cli, SameSeedGivesIdenticalOutput) {
  for (const std::string args :
       {"check-solution --pde gze2 --case III --solution \"u0*ln((a2*t - a1*x)*y)\" --seed 5 --format json",
        "optimal-system --pde gze2 --seed 9 --format json",
        "reduce --pde gze2 --subalgebra A2 --format json", "classify --pde gze1 --f \"u^K\" --format json"}) {
    const Invocation first = run(args);
    const Invocation second = run(args);
    EXPECT_EQ(first.out, second.out) << args;
    EXPECT_EQ(first.code, second.code) << args;
    EXPECT_TRUE(nlohmann::json::accept(first.out)) << args;
  }
}

TEST(Cli, ReproduceScorecardHasEveryCriterion) {
  const Invocation first = run("reproduce --format json");
  const Invocation second = run("reproduce --format json");
  EXPECT_EQ(first.out, second.out);
  const auto report = nlohmann::json::parse(first.out);
  ASSERT_EQ(report.at("criteria").size(), 8u);
  bool all = true;
  for (const auto& c : report.at("criteria")) all = all && c.at("passed").get<bool>();
  EXPECT_EQ(first.code, all ? 0 : 1);
}

}  // namespace
