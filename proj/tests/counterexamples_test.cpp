#include <gtest/gtest.h>

#include <algorithm>

#include "speccalc/counterexamples.hpp"
#include "speccalc/errors.hpp"

namespace speccalc {
namespace {

TEST(TailEvaluate, ReadsTail) {
  EXPECT_EQ(tail_evaluate(EventuallyConstantDiagonal({5, 7}, 0.25)), 0.25);
  EXPECT_EQ(tail_evaluate(EventuallyConstantDiagonal::projection(100)), 0);
  EXPECT_EQ(tail_evaluate(EventuallyConstantDiagonal::identity()), 1);
}

TEST(OpNorm, Values) {
  EXPECT_EQ(opnorm_evaluate(DiscreteSpectrum::diag({-4, 1})), 4);
  EXPECT_EQ(opnorm_evaluate(DiscreteSpectrum()), 0);
  EXPECT_EQ(OpNormEvaluator().evaluate_diagonal(EventuallyConstantDiagonal({0.5}, 2)), 2);
}

TEST(DominatedContinuity, ProjectionsStayAtZero) {
  const auto r = dominated_continuity_violation_report(10);
  ASSERT_EQ(r.projection_values.size(), 10u);
  EXPECT_TRUE(std::all_of(r.projection_values.begin(), r.projection_values.end(),
                          [](double v) { return v == 0; }));
  EXPECT_TRUE(std::all_of(r.gaps.begin(), r.gaps.end(), [](double g) { return g == 1; }));
  EXPECT_EQ(r.identity_value, 1);
  EXPECT_TRUE(r.violated);
  EXPECT_FALSE(r.control_violated);
  EXPECT_EQ(r.audit[Axiom::A4].verdict, Verdict::Fail);
  EXPECT_THROW(dominated_continuity_violation_report(0), ParameterError);
}

TEST(Locality, OperatorNormSplitsBadly) {
  const auto r = locality_violation_report(2, 1);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 2);
  EXPECT_TRUE(r.violated);
  EXPECT_EQ(r.verdict, "A3 violated");
  EXPECT_EQ(r.paper_asserted, std::vector<Axiom>{Axiom::A3});
  EXPECT_EQ(r.additional, std::vector<Axiom>{Axiom::A2});
}

TEST(Locality, ScalesWithSize) {
  const auto r = locality_violation_report(5, 3);
  EXPECT_EQ(r.lhs, 3);
  EXPECT_EQ(r.rhs, 15);
  EXPECT_THROW(locality_violation_report(1, 1), ParameterError);
  EXPECT_THROW(locality_violation_report(3, 0), ParameterError);
}

}  // namespace
}  // namespace speccalc
