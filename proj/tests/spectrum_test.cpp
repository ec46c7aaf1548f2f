#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "speccalc/diagonal.hpp"
#include "speccalc/errors.hpp"
#include "speccalc/models.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {
namespace {

using Atom = DiscreteSpectrum::Atom;

TEST(DiscreteSpectrum, CanonicalMergesAndSorts) {
  const auto s = DiscreteSpectrum::canonical({{3, 1}, {1, 2}, {3, 2}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.atoms()[0], (Atom{1, 2}));
  EXPECT_EQ(s.atoms()[1], (Atom{3, 3}));
  EXPECT_EQ(s.total_multiplicity(), 5u);
  EXPECT_EQ(s.multiplicity_of(3), 3u);
  EXPECT_EQ(s.multiplicity_of(2), 0u);
}

TEST(DiscreteSpectrum, ConstructorEnforcesInvariants) {
  EXPECT_THROW(DiscreteSpectrum({{2, 1}, {1, 1}}), InvariantError);
  EXPECT_THROW(DiscreteSpectrum({{1, 0}}), InvariantError);
  EXPECT_THROW(DiscreteSpectrum({{1, 1}}, 3), InvariantError);
  EXPECT_THROW(DiscreteSpectrum({{NAN, 1}}), InvariantError);
  EXPECT_NO_THROW(DiscreteSpectrum({{1, 2}}, 2));
}

TEST(DiscreteSpectrum, ModulusAccessors) {
  const auto s = DiscreteSpectrum::diag({-3, 0, 2});
  EXPECT_EQ(s.max_modulus(), 3);
  EXPECT_EQ(s.min_positive_modulus(), 2);
  EXPECT_FALSE(s.nonnegative());
  EXPECT_EQ(DiscreteSpectrum().max_modulus(), 0);
  EXPECT_TRUE(std::isinf(DiscreteSpectrum::diag({0}).min_positive_modulus()));
  EXPECT_EQ(s.smallest_modulus(2).expanded(), (std::vector<double>{0, 2}));
}

TEST(Counting, PolyModel) {
  const auto s = gen_model(ModelKind::Poly, 100);
  EXPECT_EQ(counting(s, 10.5), 10u);
  EXPECT_EQ(counting(s, 10), 10u);
  EXPECT_EQ(counting(s, 0.5), 0u);
}

TEST(Counting, LogModel) {
  const auto s = gen_model(ModelKind::Log, 20);
  EXPECT_EQ(counting(s, std::exp(5.0)), 5u);
  EXPECT_EQ(counting(s, std::exp(5.0) * (1 + 1e-12)), 5u);
}

TEST(Counting, UsesModulus) {
  const auto s = DiscreteSpectrum::diag({-2, -1, 1, 3});
  EXPECT_EQ(counting(s, 1), 2u);
  EXPECT_EQ(counting(s, 2.5), 3u);
  EXPECT_EQ(s.count_scaled_modulus_at_most(2, 2), 2u);
}

TEST(Trace, SumsWithMultiplicity) {
  EXPECT_EQ(trace(DiscreteSpectrum::diag({1, 2, 3})), 6);
  EXPECT_EQ(trace(DiscreteSpectrum({{1, 2}, {5, 1}})), 7);
  EXPECT_EQ(trace(DiscreteSpectrum()), 0);
}

TEST(ApplyCalculus, AbsoluteValueMergesImages) {
  const auto abs = FunctionSpec::piecewise_linear({{-1, 1}, {0, 0}, {1, 1}});
  const auto s = apply_calculus(DiscreteSpectrum::diag({-1, 1}), abs);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.atoms()[0], (Atom{1, 2}));
}

TEST(ApplyCalculus, PowerOnNegativeThrows) {
  EXPECT_THROW(apply_calculus(DiscreteSpectrum::diag({-1}), FunctionSpec::power(2)), DomainError);
}

TEST(DirectSum, ConcatenatesMultisets) {
  const auto s = direct_sum(DiscreteSpectrum::diag({1, 2}), DiscreteSpectrum::diag({2, 3}));
  EXPECT_EQ(s.expanded(), (std::vector<double>{1, 2, 2, 3}));
  const auto poly = gen_model(ModelKind::Poly, 100);
  EXPECT_EQ(counting(direct_sum(poly, poly), 75), 150u);
}

TEST(TensorProduct, SmallExamples) {
  const auto s = tensor_product(DiscreteSpectrum::diag({2}), DiscreteSpectrum::diag({3}), 100);
  EXPECT_EQ(s.expanded(), (std::vector<double>{6}));
  const auto unit =
      tensor_product(DiscreteSpectrum::diag({1}), DiscreteSpectrum::diag({1, 2, 5}), 100);
  EXPECT_EQ(unit.expanded(), (std::vector<double>{1, 2, 5}));
}

TEST(TensorProduct, PolyCountMatchesBruteForce) {
  const auto poly = gen_model(ModelKind::Poly, 100);
  const auto t = tensor_product(poly, poly, 10);
  std::uint64_t brute = 0;
  for (int a = 1; a <= 100; ++a) {
    for (int b = 1; b <= 100; ++b) brute += (a * b <= 10) ? 1 : 0;
  }
  EXPECT_EQ(brute, 27u);
  EXPECT_EQ(counting(t, 10), brute);
}

TEST(TensorProduct, RejectsNegativeAndAmbiguousZero) {
  EXPECT_THROW(tensor_product(DiscreteSpectrum::diag({-1}), DiscreteSpectrum::diag({1}), 10),
               DomainError);
  EXPECT_THROW(
      tensor_product(DiscreteSpectrum::diag({0}), gen_model(ModelKind::Poly, 10), 10),
      ZeroAmbiguity);
}

TEST(CutoffTrace, Oracles) {
  const auto s = DiscreteSpectrum::diag({1, 2, 3});
  EXPECT_EQ(cutoff_trace(s, FunctionSpec::identity(), 3), 6);
  EXPECT_EQ(cutoff_trace(s, FunctionSpec::identity(), 2), 4.5);
}

TEST(CutoffTrace, GeometricLimit) {
  std::vector<double> values;
  for (int n = 1; n <= 50; ++n) values.push_back(std::ldexp(1.0, -n));
  const auto s = DiscreteSpectrum::from_eigenvalues(values);
  const std::vector<double> schedule{0.125, 0.25, 0.5, 1, 2, 4};
  const auto limit = cutoff_trace_limit(s, FunctionSpec::identity(), schedule, 1e-12);
  ASSERT_TRUE(limit.converged());
  EXPECT_NEAR(*limit.value, 1.0, 1e-12);
}

TEST(CutoffTrace, ScheduleValidation) {
  const auto s = DiscreteSpectrum::diag({1});
  const std::vector<double> bad{2, 1};
  EXPECT_THROW(cutoff_trace_limit(s, FunctionSpec::identity(), bad, 1e-9), ParameterError);
  EXPECT_THROW(cutoff_trace_limit(s, FunctionSpec::identity(), {}, 1e-9), ParameterError);
}

TEST(Models, Defaults) {
  EXPECT_EQ(gen_model(ModelKind::Poly, 3).expanded(), (std::vector<double>{1, 2, 3}));
  const auto log = gen_model(ModelKind::Log, 2);
  EXPECT_DOUBLE_EQ(log.expanded()[1], std::exp(2.0));
  const auto st = gen_model(ModelKind::Stretched, 2);
  EXPECT_DOUBLE_EQ(st.expanded()[0], std::pow(std::log(2.0), 2));
  EXPECT_EQ(st.truncation_rank(), 2u);
  EXPECT_THROW(gen_model(ModelKind::Poly, 0), ParameterError);
  EXPECT_THROW(parse_model_kind("cubic"), ParameterError);
}

TEST(Diagonal, EntriesAndTransforms) {
  const EventuallyConstantDiagonal x({3, 1}, 0.5);
  EXPECT_EQ(x.entry(1), 3);
  EXPECT_EQ(x.entry(2), 1);
  EXPECT_EQ(x.entry(100), 0.5);
  EXPECT_EQ(x.truncated(1), EventuallyConstantDiagonal({3}, 0));
  EXPECT_EQ(x.scaled(2).tail(), 1);
  EXPECT_EQ(EventuallyConstantDiagonal::projection(2).entry(3), 0);
  EXPECT_EQ(EventuallyConstantDiagonal::identity().entry(7), 1);
  const auto b = block_sum(DiscreteSpectrum::diag({9}), x);
  EXPECT_EQ(b.entry(1), 9);
  EXPECT_EQ(b.entry(2), 3);
}

TEST(SpectrumProperty, CountingIsMonotoneAndExact) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.spectrum(12, -20, 20, 4);
    std::uint64_t previous = 0;
    for (int j = 0; j <= 40; ++j) {
      const double lambda = 0.5 * j;
      const auto n = counting(s, lambda);
      ASSERT_GE(n, previous);
      previous = n;
      std::uint64_t brute = 0;
      for (double v : s.expanded()) brute += std::abs(v) <= lambda ? 1 : 0;
      ASSERT_EQ(n, brute);
    }
    ASSERT_EQ(counting(s, 1e9), s.total_multiplicity());
  }
}

TEST(SpectrumProperty, DirectSumIsAdditive) {
  testing::Gen gen(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen.spectrum(10, -8, 8, 3, true);
    const auto b = gen.spectrum(10, -8, 8, 3, true);
    const auto s = direct_sum(a, b);
    ASSERT_EQ(s.total_multiplicity(), a.total_multiplicity() + b.total_multiplicity());
    for (int j = 0; j <= 20; ++j) {
      const double lambda = gen.uniform(0, 10);
      ASSERT_EQ(counting(s, lambda), counting(a, lambda) + counting(b, lambda));
    }
    ASSERT_EQ(trace(s), trace(a) + trace(b));
  }
}

TEST(SpectrumProperty, TensorMatchesBruteForce) {
  testing::Gen gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gen.spectrum(8, 0.125, 10, 3, true);
    const auto b = gen.spectrum(8, 0.125, 10, 3, true);
    const double bound = gen.uniform(0, 60);
    const auto t = tensor_product(a, b, bound);
    std::uint64_t brute = 0;
    for (double x : a.expanded()) {
      for (double y : b.expanded()) brute += x * y <= bound ? 1 : 0;
    }
    ASSERT_EQ(t.total_multiplicity(), brute);
  }
}

TEST(SpectrumProperty, CalculusConservesMultiplicity) {
  testing::Gen gen(14);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.spectrum(10, 0, 10, 4);
    const auto f = gen.monotone_unbounded();
    const auto image = apply_calculus(s, f);
    ASSERT_EQ(image.total_multiplicity(), s.total_multiplicity());
    for (const auto& atom : s.atoms()) ASSERT_GE(image.multiplicity_of(f(atom.value)), atom.multiplicity);
  }
}

TEST(SpectrumProperty, CutoffTraceReachesTraceBeyondSupport) {
  testing::Gen gen(15);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.spectrum(10, -10, 10, 3, true);
    ASSERT_DOUBLE_EQ(cutoff_trace(s, FunctionSpec::identity(), s.max_modulus() + 1), trace(s));
  }
}

}  // namespace
}  // namespace speccalc
