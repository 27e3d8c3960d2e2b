#include <gtest/gtest.h>

#include "plueckerlab/suites.hpp"

using namespace plueckerlab;

namespace {

ExperimentConfig config(std::string command, int r, int m, int trials) {
  ExperimentConfig c;
  c.command = std::move(command);
  c.r = r;
  c.m = m;
  c.trials = trials;
  c.seed = 77;
  return c;
}

}  // namespace

TEST(Suites, EveryCommandIsRegistered) {
  EXPECT_EQ(command_names().size(), 11u);
  EXPECT_THROW(run(config("no-such-suite", 2, 3, 1)), UnsupportedError);
}

TEST(Suites, RejectsShapesOutsideTheHypotheses) {
  EXPECT_THROW(run(config("theorem31", 2, 2, 1)), UnsupportedError);
  EXPECT_THROW(run(config("prop32", 2, 2, 1)), UnsupportedError);
  auto bad = config("p1-divisor", 2, 3, 1);
  bad.splitting = {3, 2};
  EXPECT_THROW(run(bad), PreconditionError);
}

TEST(Suites, ReportsAreDeterministicApartFromTiming) {
  for (const auto& name : command_names()) {
    const auto c = config(name, 2, 3, 3);
    const auto a = run(c).to_json(false).dump();
    const auto b = run(c).to_json(false).dump();
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a.find("elapsed_s"), std::string::npos);
  }
}

TEST(Suites, SeedChangesSamples) {
  auto c = config("taylor-check", 2, 3, 2);
  const auto a = run(c).to_json(false);
  c.seed = 78;
  EXPECT_NE(a["cases"], run(c).to_json(false)["cases"]);
}

TEST(Suites, SchemaAndSummary) {
  const auto report = run(config("expand-check", 2, 2, 4));
  const auto j = report.to_json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "expand-check");
  EXPECT_EQ(j["summary"]["passes"], 5);
  EXPECT_EQ(j["summary"]["failures"], 0);
  EXPECT_TRUE(j.contains("wall_time_s"));
  EXPECT_TRUE(report.succeeded());
  const auto csv = report.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.rfind("command,r,m,", 0), 0u);
}

TEST(Report, FailuresCarryTheirInput) {
  Report report(config("taylor-check", 1, 2, 1), "statement");
  report.record("ok", {{"sample", 0}}, true, 0.0, {{"x", 1}});
  report.record("bad", {{"sample", 1}}, false, 0.0, {{"x", 2}});
  EXPECT_FALSE(report.succeeded());
  ASSERT_EQ(report.counterexamples().size(), 1u);
  EXPECT_EQ(report.counterexamples()[0]["input"]["x"], 2);
  EXPECT_EQ(report.counterexamples()[0]["case_index"], 1);
  EXPECT_EQ(report.to_json()["summary"]["failures"], 1);
}
