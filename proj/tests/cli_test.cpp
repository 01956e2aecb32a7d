#include <gtest/gtest.h>

#include "crdtlab/cli.hpp"

using namespace crdtlab;
using namespace crdtlab::cli;

namespace {

std::string fixture(const char* name) { return std::string(CRDTLAB_FIXTURES) + "/" + name; }

CliConfig run_config(const char* name) {
  CliConfig cfg;
  cfg.command = Command::run;
  cfg.scenario_path = fixture(name);
  return cfg;
}

}  // namespace

TEST(Cli, CSetAnomalyFailsTheOracle) {
  const auto res = execute(run_config("cset-anomaly.json"));
  EXPECT_EQ(res.exit_code, kExitCheckFailure);
  EXPECT_NE(res.error.find("oracle"), std::string::npos);
  EXPECT_NE(res.output.find("result: FAIL"), std::string::npos);
}

TEST(Cli, CSetAnomalyPassesUnderOptOrSet) {
  auto cfg = run_config("cset-anomaly.json");
  cfg.design = sim::Design::opt_or_set;
  const auto res = execute(cfg);
  EXPECT_EQ(res.exit_code, kExitOk) << res.output << res.error;
}

TEST(Cli, CartAnomalyFailsAndOrSetPasses) {
  auto cfg = run_config("cart-anomaly.json");
  EXPECT_EQ(execute(cfg).exit_code, kExitCheckFailure);
  cfg.design = sim::Design::or_set;
  EXPECT_EQ(execute(cfg).exit_code, kExitOk);
}

TEST(Cli, FixturesThatShouldPass) {
  for (const char* name : {"addwins-basic.json", "orset-vs-opt-equivalence.json"}) {
    const auto res = execute(run_config(name));
    EXPECT_EQ(res.exit_code, kExitOk) << name << '\n' << res.output << res.error;
  }
}

TEST(Cli, MissingFile) {
  const auto res = execute(run_config("does-not-exist.json"));
  EXPECT_EQ(res.exit_code, kExitUsage);
  EXPECT_NE(res.error.find("file error"), std::string::npos);
}

TEST(Cli, RepeatedCommandsAreByteIdentical) {
  std::vector<CliConfig> configs;
  configs.push_back(run_config("orset-vs-opt-equivalence.json"));
  configs.back().format = Format::csv;
  CliConfig suite;
  suite.command = Command::suite;
  suite.ops_bound = 2;
  configs.push_back(suite);
  CliConfig space;
  space.command = Command::space;
  space.cycles = 50;
  space.seed = 3;
  space.format = Format::csv;
  configs.push_back(space);
  CliConfig enumerate;
  enumerate.command = Command::enumerate;
  enumerate.ops_bound = 2;
  enumerate.list = true;
  configs.push_back(enumerate);
  for (const auto& cfg : configs) {
    const auto a = execute(cfg);
    const auto b = execute(cfg);
    EXPECT_FALSE(a.output.empty());
    EXPECT_EQ(a.output, b.output);
    EXPECT_EQ(a.exit_code, b.exit_code);
  }
}

TEST(Cli, SuiteKnownBadMode) {
  CliConfig cfg;
  cfg.command = Command::suite;
  cfg.ops_bound = 3;
  EXPECT_EQ(execute(cfg).exit_code, kExitOk);
  cfg.design = sim::Design::c_set;
  const auto res = execute(cfg);
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_NE(res.output.find("known-bad"), std::string::npos);
}

TEST(Cli, EnumerationLimit) {
  CliConfig cfg;
  cfg.command = Command::suite;
  cfg.ops_bound = 9;
  const auto res = execute(cfg);
  EXPECT_EQ(res.exit_code, kExitUsage);
  EXPECT_NE(res.error.find("enumeration limit"), std::string::npos);
}

TEST(Cli, EnumerateCountsAndLists) {
  CliConfig cfg;
  cfg.command = Command::enumerate;
  cfg.ops_bound = 1;
  cfg.replicas = 1;
  EXPECT_NE(execute(cfg).output.find(": 2 schedules"), std::string::npos);
  cfg.list = true;
  const auto listed = execute(cfg).output;
  EXPECT_EQ(std::count(listed.begin(), listed.end(), '\n'), 2);
}

TEST(Cli, SpaceSummary) {
  CliConfig cfg;
  cfg.command = Command::space;
  cfg.cycles = 10;
  const auto res = execute(cfg);
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_NE(res.output.find("max E_size: 3"), std::string::npos) << res.output;
  EXPECT_NE(res.output.find("max vector_len: 3"), std::string::npos);
}

TEST(Cli, ArgumentParsing) {
  const char* bad[] = {"crdtlab", "run"};
  EXPECT_EQ(main_entry(2, const_cast<char**>(bad)), kExitUsage);
  const char* unknown[] = {"crdtlab", "suite", "--design", "lww"};
  EXPECT_EQ(main_entry(4, const_cast<char**>(unknown)), kExitUsage);
  const char* space_cart[] = {"crdtlab", "space", "--design", "cart"};
  EXPECT_EQ(main_entry(4, const_cast<char**>(space_cart)), kExitUsage);
}
