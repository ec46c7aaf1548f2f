#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "speccalc/errors.hpp"
#include "speccalc/io.hpp"

namespace speccalc {
namespace {

TEST(SpectrumJson, RoundTrip) {
  const auto s = DiscreteSpectrum({{0.1, 2}, {3, 1}}, 3, "model");
  const auto text = write_spectrum(s);
  EXPECT_EQ(text, "{\"atoms\":[[0.1,2],[3.0,1]],\"truncation_rank\":3,\"source_label\":\"model\"}\n");
  EXPECT_EQ(parse_spectrum(text), s);
}

TEST(SpectrumJson, Errors) {
  EXPECT_THROW(parse_spectrum("{\"atoms\": [[1, 1]"), FormatError);
  EXPECT_THROW(parse_spectrum("{}"), FormatError);
  EXPECT_THROW(parse_spectrum("{\"atoms\": [[2, 1], [1, 1]]}"), FormatError);
  EXPECT_THROW(parse_spectrum("{\"atoms\": [[1, 0]]}"), FormatError);
  EXPECT_THROW(parse_spectrum("{\"atoms\": [[1, 1.5]]}"), FormatError);
  EXPECT_THROW(parse_spectrum("{\"atoms\": [[1, 1]], \"truncation_rank\": 4}"), FormatError);
  try {
    parse_spectrum("{\"atoms\": [[1, 1], [\"x\", 1]]}");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("atoms[1]"), std::string::npos) << e.what();
  }
}

TEST(FunctionJson, RoundTripAllKinds) {
  const std::vector<FunctionSpec> specs{
      FunctionSpec::identity(),
      FunctionSpec::affine(2, -1),
      FunctionSpec::power(1.5),
      FunctionSpec::exp_scale(0.25),
      FunctionSpec::log_pos(),
      FunctionSpec::indicator(1, 2),
      FunctionSpec::cutoff_ramp(3),
      FunctionSpec::piecewise_linear({{0, 0}, {1, 2}}),
      FunctionSpec::compose(FunctionSpec::power(2), FunctionSpec::log_pos()),
      FunctionSpec::truncate_band(4),
  };
  for (const auto& f : specs) {
    const auto j = function_to_json(f);
    EXPECT_TRUE(function_from_json(parse_json(j.dump())) == f) << j.dump();
  }
  EXPECT_THROW(function_from_json(parse_json("{\"kind\": \"cubic\"}")), FormatError);
  EXPECT_THROW(function_from_json(parse_json("{\"kind\": \"power\"}")), FormatError);
  EXPECT_THROW(function_from_json(parse_json("{\"kind\": \"power\", \"beta\": -1}")), FormatError);
}

TEST(ProfileJson, SpecAndTable) {
  auto p = profile_from_json(parse_json("{\"kind\": \"power\", \"beta\": 2, \"c\": 3}"));
  EXPECT_EQ(p.c, 3);
  EXPECT_EQ(p.profile(2), 4);
  p = profile_from_json(parse_json("{\"table\": [[0, 0], [1, 2]]}"));
  EXPECT_EQ(p.c, 1);
  EXPECT_EQ(p.profile(0.5), 1);
  const auto back = profile_from_json(profile_to_json(p.profile, p.c));
  EXPECT_EQ(*back.profile.table(), *p.profile.table());
  EXPECT_THROW(profile_from_json(parse_json("{\"table\": [[0, 1], [1, 0]]}")), FormatError);
  EXPECT_THROW(profile_from_json(parse_json("{\"kind\": \"indicator\", \"lo\": 0, \"hi\": 1}")),
               FormatError);
  EXPECT_THROW(profile_from_json(parse_json("{\"kind\": \"identity\", \"c\": 0}")), FormatError);
}

TEST(DiagonalJson, RoundTrip) {
  const EventuallyConstantDiagonal x({1, 2}, 0.5);
  EXPECT_EQ(diagonal_from_json(diagonal_to_json(x)), x);
  EXPECT_THROW(diagonal_from_json(parse_json("{\"prefix\": [1]}")), FormatError);
}

TEST(AdjacencyJson, EdgesWithDefaultWeight) {
  const auto a = adjacency_from_json(parse_json("{\"n\": 3, \"edges\": [[0, 1], [1, 2, 2.5]]}"));
  EXPECT_EQ(a.weights()(0, 1), 1);
  EXPECT_EQ(a.weights()(2, 1), 2.5);
  EXPECT_THROW(adjacency_from_json(parse_json("{\"n\": 2, \"edges\": [[0, 2]]}")), FormatError);
  EXPECT_THROW(adjacency_from_json(parse_json("{\"n\": 2, \"edges\": [[0, 0]]}")), FormatError);
}

TEST(SamplesCsv, RoundTripAndErrors) {
  const CountingSamples s{{{1, 1}, {2.5, 4}, {10, 9}}, ""};
  const auto text = write_samples(s);
  EXPECT_EQ(text.substr(0, 13), "lambda,count\n");
  EXPECT_EQ(parse_samples(text).points, s.points);
  EXPECT_THROW(parse_samples("x,y\n1,1\n"), FormatError);
  EXPECT_THROW(parse_samples("lambda,count\n1,abc\n"), FormatError);
  EXPECT_THROW(parse_samples("lambda,count\n2,1\n1,2\n"), FormatError);
}

TEST(ReportJson, NonFiniteValuesAsStrings) {
  Witness w{"tail", {EventuallyConstantDiagonal::identity()}, INFINITY, NAN};
  const auto j = to_json(w);
  EXPECT_EQ(j["lhs"], "inf");
  EXPECT_EQ(j["rhs"], "nan");
  EXPECT_EQ(to_json(GrowthClass{growth::Log{2}})["class"], "log");
}

TEST(IoProperty, RandomSpectraRoundTrip) {
  testing::Gen gen(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = gen.spectrum(12, -1e6, 1e6, 5);
    ASSERT_EQ(parse_spectrum(write_spectrum(s)), s);
  }
}

TEST(IoProperty, RandomFunctionsRoundTrip) {
  testing::Gen gen(62);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = gen.monotone_unbounded();
    const auto back = function_from_json(parse_json(function_to_json(f).dump()));
    ASSERT_TRUE(back == f) << f.describe();
  }
}

}  // namespace
}  // namespace speccalc
