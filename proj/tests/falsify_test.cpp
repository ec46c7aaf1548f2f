#include <gtest/gtest.h>

#include <random>

#include "speccalc/errors.hpp"
#include "speccalc/falsify.hpp"
#include "speccalc/growth.hpp"

namespace speccalc {
namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.instances = 100;
  cfg.profiles = 5;
  cfg.pairs = 10;
  return cfg;
}

TEST(RunConfig, Validation) {
  RunConfig cfg;
  cfg.tol = -1;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = RunConfig{};
  cfg.grid_points = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  EXPECT_THROW(parse_f3_evaluator("norm"), ParameterError);
  EXPECT_EQ(parse_f3_evaluator("tail"), F3Evaluator::Tail);
}

TEST(F1, PassesAndSabotageFails) {
  auto cfg = small_config();
  const auto pass = run_f1(cfg);
  EXPECT_TRUE(pass.pass);
  EXPECT_TRUE(pass.witnesses.empty());
  cfg.sabotage = true;
  const auto fail = run_f1(cfg);
  EXPECT_FALSE(fail.pass);
  EXPECT_FALSE(fail.witnesses.empty());
  EXPECT_LE(fail.witnesses.size(), 5u);
}

TEST(F1, NoInstancesPassesWithNote) {
  auto cfg = small_config();
  cfg.instances = 0;
  const auto r = run_f1(cfg);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.notes.empty());
}

TEST(F2, PassesAndMixedPairFails) {
  auto cfg = small_config();
  EXPECT_TRUE(run_f2(cfg).pass);
  cfg.inject_mixed_pair = true;
  const auto r = run_f2(cfg);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(F2, TinyGridReportsInsufficientSamples) {
  auto cfg = small_config();
  cfg.grid_points = 4;
  const auto r = run_f2(cfg);
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.witnesses[0]["error_kind"], "insufficient_samples");
}

TEST(F3, TraceAndPowerPassTailFails) {
  auto cfg = small_config();
  EXPECT_TRUE(run_f3(cfg).pass);
  cfg.f3_evaluator = F3Evaluator::Power2;
  EXPECT_TRUE(run_f3(cfg).pass);
  cfg.f3_evaluator = F3Evaluator::Tail;
  EXPECT_FALSE(run_f3(cfg).pass);
}

TEST(F4, Passes) {
  EXPECT_TRUE(run_f4(small_config()).pass);
}

TEST(Suite, DeterministicForSeed) {
  const auto cfg = small_config();
  const auto a = run_all(cfg).to_json().dump();
  const auto b = run_all(cfg).to_json().dump();
  EXPECT_EQ(a, b);
  auto other = cfg;
  other.seed = 2;
  EXPECT_NE(run_all(other).to_json().dump(), a);
}

TEST(Suite, ReportSchema) {
  const auto j = run_f4(small_config()).to_json();
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["test_id"], "F4");
  EXPECT_TRUE(j.contains("witnesses"));
  EXPECT_TRUE(j.contains("metrics"));
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("paper_anchor"));
}

TEST(SameClassPairs, ClassifyAsTheirFamily) {
  std::mt19937_64 rng(71);
  for (ModelKind kind : {ModelKind::Poly, ModelKind::Stretched, ModelKind::Log}) {
    for (int i = 0; i < 5; ++i) {
      const auto pair = make_same_class_pair(kind, rng);
      const auto r = sum_growth_check(pair.first, pair.second, pair.grid);
      EXPECT_TRUE(r.additive);
      EXPECT_EQ(class_name(r.fit_first.verdict), to_string(kind));
      EXPECT_EQ(class_name(r.fit_second.verdict), to_string(kind));
      EXPECT_TRUE(r.preserved);
    }
  }
}

}  // namespace
}  // namespace speccalc
