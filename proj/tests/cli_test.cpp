// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = atem::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "atem_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Solve, AnharmonicDefaults) {
  const auto r = run({"solve", "--problem", "anharmonic", "--g", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "# atem solve\n"));
  EXPECT_TRUE(contains(r.out, "# precision: 192 bits\n"));
  for (const char* line : {"\n0 1.06528551 ", "\n1 3.30687201 ", "\n2 5.74795927 ", "\n3 8.35267783 ",
                           "\n4 11.09859562 ", "\n5 13.96992632 "})
    EXPECT_TRUE(contains(r.out, line)) << line;
}

TEST(Solve, HarmonicExact) {
  const auto r = run({"solve", "--problem", "harmonic", "--window", "0:14", "--k", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "# k_list: 30,40\n"));
  EXPECT_TRUE(contains(r.out, "\n6 13.00000000 0 0.0e+00\n"));
}

TEST(Solve, SpecFileMatchesBuiltin) {
  const auto a = run({"solve", "--spec", std::string(ATEM_PROBLEMS_DIR) + "/anharmonic.json", "--window", "0:6"});
  const auto b = run({"solve", "--problem", "anharmonic", "--g", "0.1", "--window", "0:6"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out.substr(a.out.find("# n E")), b.out.substr(b.out.find("# n E")));
}

TEST(Solve, Csv) {
  const auto r = run({"solve", "--problem", "harmonic", "--window", "0:4", "--k", "30", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "index,E,residual,stability,accepted\n"));
}

TEST(Solve, UsageErrors) {
  EXPECT_EQ(run({}).code, atem::cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, atem::cli::kUsage);
  EXPECT_EQ(run({"solve", "--problem", "morse"}).code, atem::cli::kUsage);
  EXPECT_EQ(run({"solve", "--problem", "anharmonic"}).code, atem::cli::kUsage);
  EXPECT_EQ(run({"solve", "--spec", "/nonexistent/problem.json"}).code, atem::cli::kUsage);
  EXPECT_EQ(run({"solve", "--problem", "harmonic", "--window", "5:1"}).code, atem::cli::kUsage);
}

TEST(Solve, EmptyWindowIsNotFound) {
  const auto r = run({"solve", "--problem", "harmonic", "--window", "1.5:2.5", "--k", "30"});
  EXPECT_EQ(r.code, atem::cli::kNotFound);
}

TEST(Solve, Deterministic) {
  const std::vector<std::string> args{"solve", "--problem", "anharmonic", "--g", "0.1", "--window", "0:6", "--k", "40"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Converge, Table) {
  const auto r = run({"converge", "--problem", "anharmonic", "--g", "0.1", "--k-list", "20:40:10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "15.77123716"));
  EXPECT_TRUE(contains(r.out, "?"));
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    EXPECT_TRUE(line.empty() || line.back() != ' ') << "trailing space: " << line;
}

TEST(Converge, CsvFile) {
  const auto path = scratch("table.csv");
  const auto r = run({"converge", "--problem", "harmonic", "--window", "0:6", "--k-list", "20,30", "--csv", "--out",
                      path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "k,E0,E1,E2");
}

TEST(Converge, NeedsTwoOrders) {
  const auto r = run({"converge", "--problem", "anharmonic", "--g", "0.1", "--k-list", "80"});
  EXPECT_EQ(r.code, atem::cli::kUsage);
  EXPECT_TRUE(contains(r.err, "need >=2 iteration counts"));
}

TEST(Wavefunction, SecondExcitedState) {
  const auto path = scratch("psi2.csv");
  const auto r = run({"wavefunction", "--problem", "anharmonic", "--g", "0.1", "--state", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "coefficients: 1, 0, -2.37398, 0, 0.14797, 0, 0.0193735"));
  EXPECT_TRUE(contains(r.out, "nodes 2\n"));
  EXPECT_TRUE(std::filesystem::exists(path));
}

TEST(Wavefunction, HarmonicGroundState) {
  const auto path = scratch("psi0.csv");
  const auto r = run({"wavefunction", "--problem", "harmonic", "--state", "0", "--window", "0:4", "--k", "30",
                      "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "coefficients: 1, 0, 0, 0,"));
}

TEST(Wavefunction, DotVanishesAtOrigin) {
  const auto path = scratch("dot.csv");
  const auto r = run({"wavefunction", "--problem", "quantum_dot", "--omega", "1", "--lambda", "1", "--l", "0.5",
                      "--state", "0", "--k", "40", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "x,psi");
  EXPECT_EQ(first, "0,0");
}

TEST(Wavefunction, Errors) {
  EXPECT_EQ(run({"wavefunction", "--problem", "harmonic", "--state", "0"}).code, atem::cli::kUsage);
  const auto r = run({"wavefunction", "--problem", "anharmonic", "--g", "0.1", "--state", "9", "--out",
                      scratch("none.csv").string()});
  EXPECT_EQ(r.code, atem::cli::kNotFound);
}

TEST(QuasiExact, Pass) {
  for (const char* j : {"1", "2", "3"}) {
    const auto r = run({"quasi-exact", "--l", "0.5", "--omega", "1", "--j", j});
    EXPECT_EQ(r.code, 0) << j << r.err;
    EXPECT_TRUE(contains(r.out, "verdict PASS")) << j;
  }
}

TEST(QuasiExact, UnsupportedLevel) {
  const auto r = run({"quasi-exact", "--l", "0.5", "--omega", "1", "--j", "4"});
  EXPECT_EQ(r.code, atem::cli::kUsage);
}

TEST(Oracle, Anharmonic) {
  const auto r = run({"oracle", "--problem", "anharmonic", "--g", "0.1", "--window", "0:9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "verified 4 of 4"));
}

TEST(Oracle, SingularRejected) {
  const auto r = run({"oracle", "--problem", "quantum_dot", "--omega", "1", "--lambda", "1", "--l", "0.5"});
  EXPECT_EQ(r.code, atem::cli::kUsage);
  EXPECT_TRUE(contains(r.err, "regular problems only"));
}

} // namespace
