#include <gtest/gtest.h>

#include <cmath>

#include "speccalc/axioms.hpp"
#include "speccalc/counterexamples.hpp"
#include "speccalc/errors.hpp"

namespace speccalc {
namespace {

TraceFormEvaluator trace_evaluator() {
  return {TraceProfile::from_spec(FunctionSpec::identity()), 1.0};
}

TEST(Axioms, NamesAndIds) {
  EXPECT_STREQ(axiom_id(Axiom::A1), "A1");
  EXPECT_STREQ(axiom_id(Axiom::A5), "A5");
  EXPECT_STREQ(to_string(Verdict::Pass), "pass");
  EXPECT_STREQ(to_string(Verdict::NotApplicable), "not_applicable");
}

TEST(ValuesAgree, IntegralExactOtherwiseRelative) {
  EXPECT_TRUE(values_agree(3, 3, 1e-9));
  EXPECT_FALSE(values_agree(3, 4, 0.5));
  EXPECT_TRUE(values_agree(1.0 + 1e-12, 1.0 + 2e-12, 1e-9));
  EXPECT_FALSE(values_agree(1.5, 1.6, 1e-9));
  EXPECT_TRUE(values_agree(INFINITY, INFINITY, 1e-9));
}

TEST(AuditAxioms, TraceEvaluatorPassesAll) {
  const auto report = audit_axioms(trace_evaluator());
  EXPECT_TRUE(report.all_pass());
  for (Axiom a : kAllAxioms) {
    EXPECT_EQ(report[a].verdict, Verdict::Pass) << axiom_id(a) << " " << report[a].note;
    EXPECT_GT(report[a].instances, 0u) << axiom_id(a);
  }
}

TEST(AuditAxioms, NonlinearProfileFailsOnlyHomogeneity) {
  const TraceFormEvaluator e(TraceProfile::from_spec(FunctionSpec::power(1.5)), 2.0);
  const auto report = audit_axioms(e);
  EXPECT_EQ(report.failed(), std::vector<Axiom>{Axiom::A5});
  ASSERT_TRUE(report[Axiom::A5].witness.has_value());
}

TEST(AuditAxioms, OperatorNormFailsAdditivityAndLocality) {
  const auto report = audit_axioms(OpNormEvaluator());
  EXPECT_EQ(report[Axiom::A1].verdict, Verdict::Pass);
  EXPECT_EQ(report[Axiom::A2].verdict, Verdict::Fail);
  EXPECT_EQ(report[Axiom::A3].verdict, Verdict::Fail);
  EXPECT_EQ(report[Axiom::A5].verdict, Verdict::Pass);
  ASSERT_TRUE(report[Axiom::A3].witness.has_value());
  EXPECT_EQ(report[Axiom::A3].witness->lhs, 1);
  EXPECT_EQ(report[Axiom::A3].witness->rhs, 2);
}

TEST(AuditAxioms, TailEvaluatorFailsDominatedContinuity) {
  const auto report = audit_axioms(TailEvaluator());
  EXPECT_EQ(report.domain, EvaluatorDomain::EventuallyConstantDiagonals);
  EXPECT_EQ(report[Axiom::A4].verdict, Verdict::Fail);
  ASSERT_TRUE(report[Axiom::A4].witness.has_value());
  EXPECT_EQ(report[Axiom::A4].witness->lhs, 0);
  EXPECT_EQ(report[Axiom::A4].witness->rhs, 1);
  EXPECT_EQ(report.failed(), std::vector<Axiom>{Axiom::A4});
}

TEST(AuditAxioms, DeterministicForSeed) {
  AuditConfig cfg;
  cfg.seed = 17;
  const auto a = audit_axioms(OpNormEvaluator(), cfg);
  const auto b = audit_axioms(OpNormEvaluator(), cfg);
  for (Axiom x : kAllAxioms) {
    EXPECT_EQ(a[x].verdict, b[x].verdict);
    EXPECT_EQ(a[x].instances, b[x].instances);
    EXPECT_EQ(a[x].max_deviation, b[x].max_deviation);
  }
}

TEST(AuditAxiomsProperty, RandomTraceFormsPassAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    AuditConfig cfg;
    cfg.seed = seed;
    cfg.instances = 50;
    const TraceFormEvaluator e(
        TraceProfile::from_spec(FunctionSpec::affine(0.5 + static_cast<double>(seed), 0)),
        1.0 / static_cast<double>(seed));
    const auto report = audit_axioms(e, cfg);
    EXPECT_TRUE(report.all_pass()) << "seed " << seed;
  }
}

}  // namespace
}  // namespace speccalc
