#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>

#include "isolab/cli.hpp"

namespace {

using namespace isolab;
using namespace isolab::cli;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(std::string command, std::string subcommand = "") {
  RunConfig cfg;
  cfg.command = std::move(command);
  cfg.subcommand = std::move(subcommand);
  cfg.threads = 1;
  return cfg;
}

report::ordered_json parse(const Outcome& o) { return report::ordered_json::parse(o.out); }

TEST(Run, VerifyCmReportsTheOctonionCubic) {
  auto cfg = config("verify", "cm");
  cfg.family.family = "cartan-cubic";
  cfg.family.algebra = AlgebraTag::O;
  const auto o = invoke(cfg);
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["schema_version"], "isolab-report/1");
  EXPECT_EQ(j["report"]["grad_identity_ok"], true);
  EXPECT_EQ(j["report"]["inferred_c"], "0");
  EXPECT_EQ(j["family"]["ambient_dim"], 26);
  EXPECT_FALSE(j["report"]["checks"]["gradient"]["citation"].get<std::string>().empty());
}

TEST(Run, VerifyCmSolvesFkmMultiplicities) {
  auto cfg = config("verify", "cm");
  cfg.family = {"fkm", 7, 2, 3, AlgebraTag::R};
  const auto j = parse(invoke(cfg));
  EXPECT_EQ(j["solved_multiplicities"], (report::ordered_json{3, 4}));
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(invoke(config("catalog", "su3-orbit")).code, 0);

  auto bad_dim = config("nurowski", "check");
  bad_dim.dim = 7;
  const auto o = invoke(bad_dim);
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("--dim"), std::string::npos);

  auto bad_fkm = config("verify", "cm");
  bad_fkm.family = {"fkm", 7, 1, 1, AlgebraTag::R};  // k * delta - m - 1 = -1
  EXPECT_EQ(invoke(bad_fkm).code, 2);

  EXPECT_EQ(invoke(config("nonsense")).code, 2);

  // A verification that runs but fails exits 1.
  EXPECT_EQ(invoke(config("nurowski", "crosscheck")).code, 1);
  auto printed = config("catalog", "fkm-table");
  EXPECT_EQ(invoke(printed).code, 0);
  printed.compare_printed = true;
  EXPECT_EQ(invoke(printed).code, 1);
}

TEST(Run, NegativeControlIsRejected) {
  auto cfg = config("nurowski", "check");
  cfg.dim = 8;
  cfg.negative_control = true;
  const auto o = invoke(cfg);
  ASSERT_EQ(o.code, 0);
  const auto j = parse(o);
  EXPECT_EQ(j["negative_control"]["rejected"], true);
  EXPECT_EQ(j["conditions"]["ok"], true);
}

TEST(Run, InhomogeneityVerdicts) {
  auto cfg = config("catalog", "inhom");
  cfg.m1 = 5;
  cfg.m2 = 2;
  EXPECT_EQ(parse(invoke(cfg))["result"]["verdict"], "inconclusive");
  cfg.m1 = 3;
  cfg.m2 = 4;
  EXPECT_EQ(parse(invoke(cfg))["result"]["verdict"], "inhomogeneous");
}

TEST(Determinism, SameConfigGivesIdenticalBytesForAnyThreadCount) {
  auto cfg = config("spectrum");
  cfg.family = {"fkm", 7, 2, 2, AlgebraTag::R};
  cfg.seeds = 8;
  const auto one = invoke(cfg);
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(invoke(cfg).out, one.out);
  cfg.threads = 4;
  EXPECT_EQ(invoke(cfg).out, one.out);
  cfg.seed += 1;
  EXPECT_NE(invoke(cfg).out, one.out);
}

TEST(Determinism, ThreadCountComesFromTheEnvironment) {
  RunConfig cfg;
  ::setenv(kThreadsEnv, "3", 1);
  EXPECT_EQ(resolve_threads(cfg), 3);
  cfg.threads = 2;
  EXPECT_EQ(resolve_threads(cfg), 2);
  cfg.threads = 0;
  ::setenv(kThreadsEnv, "lots", 1);
  EXPECT_THROW(resolve_threads(cfg), UsageError);
  ::unsetenv(kThreadsEnv);
  EXPECT_GE(resolve_threads(cfg), 1);
}

TEST(Formats, SpectrumCsvHasOneRowPerEigenvalue) {
  auto cfg = config("spectrum");
  cfg.family = {"product", 5, 2, 1, AlgebraTag::R};
  cfg.seeds = 2;
  cfg.format = OutputFormat::csv;
  const auto o = invoke(cfg);
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "seed,index,eigenvalue");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 2 * 4);  // a 4-dimensional hypersurface in S^5, two seeds
}

TEST(Formats, PolynomialTextRoundTrips) {
  auto cfg = config("family", "build");
  cfg.family = {"nomizu", 3, 1, 1, AlgebraTag::R};
  cfg.format = OutputFormat::poly_text;
  const auto o = invoke(cfg);
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(poly_from_text(o.out), nomizu_family(3).F);
}

TEST(Formats, CliffordCsvListsNonzeroEntries) {
  auto cfg = config("clifford", "build");
  cfg.clifford_m = 1;
  cfg.family.k = 1;
  cfg.format = OutputFormat::csv;
  const auto o = invoke(cfg);
  ASSERT_EQ(o.code, 0);
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "matrix,row,col,value");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 4);  // P0 = diag(1,-1), P1 = antidiagonal
}

TEST(Output, WritesToTheRequestedFile) {
  const auto path = std::filesystem::temp_directory_path() / "isolab_cli_test.json";
  auto cfg = config("catalog", "su3-orbit");
  cfg.output_path = path.string();
  const auto o = invoke(cfg);
  ASSERT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  EXPECT_EQ(report::ordered_json::parse(text)["command"], "catalog su3-orbit");
  std::filesystem::remove(path);

  cfg.output_path = "/nonexistent-dir/out.json";
  EXPECT_EQ(invoke(cfg).code, 2);
}

}  // namespace
