#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "speccalc/function_spec.hpp"
#include "speccalc/interval.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc::testing {

// Seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Values uniform in [lo, hi]; dyadic values are multiples of 1/8.
  DiscreteSpectrum spectrum(std::size_t max_atoms, double lo, double hi,
                            std::uint64_t max_mult = 3, bool dyadic = false) {
    const auto n = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(max_atoms)));
    std::vector<DiscreteSpectrum::Atom> atoms;
    for (std::size_t i = 0; i < n; ++i) {
      double v = uniform(lo, hi);
      if (dyadic) v = std::round(v * 8) / 8;
      atoms.push_back({v, static_cast<std::uint64_t>(integer(1, static_cast<std::int64_t>(max_mult)))});
    }
    return DiscreteSpectrum::canonical(std::move(atoms));
  }

  // Monotone, unbounded on [0, inf), nonnegative on [0, inf).
  FunctionSpec monotone_unbounded() {
    switch (integer(0, 5)) {
      case 0:
        return FunctionSpec::power(uniform(0.3, 3.5));
      case 1:
        return FunctionSpec::exp_scale(uniform(0.05, 1.5));
      case 2:
        return FunctionSpec::affine(uniform(0.1, 4.0), uniform(0.0, 3.0));
      case 3:
        return monotone_piecewise();
      case 4:
        return FunctionSpec::compose(FunctionSpec::affine(uniform(0.5, 2.0), 0.0),
                                     FunctionSpec::power(uniform(0.5, 2.5)));
      default:
        return FunctionSpec::compose(FunctionSpec::power(uniform(0.5, 2.0)), monotone_piecewise());
    }
  }

  // Nondecreasing knots through (0, v0 >= 0) with plateaus and a rising last segment.
  FunctionSpec monotone_piecewise() {
    std::vector<std::pair<double, double>> knots{{0.0, coin() ? 0.0 : uniform(0.0, 2.0)}};
    const auto n = integer(1, 5);
    for (std::int64_t i = 0; i < n; ++i) {
      const double t = knots.back().first + uniform(0.25, 4.0);
      const double v = knots.back().second + (coin(0.3) ? 0.0 : uniform(0.0, 5.0));
      knots.emplace_back(t, v);
    }
    knots.emplace_back(knots.back().first + 1.0, knots.back().second + uniform(0.5, 3.0));
    return FunctionSpec::piecewise_linear(std::move(knots));
  }

  // Up to max_parts disjoint closed or half-open intervals inside [lo, hi].
  IntervalUnion interval_union(std::size_t max_parts, double lo, double hi) {
    const auto n = integer(0, static_cast<std::int64_t>(max_parts));
    std::vector<double> cuts;
    for (std::int64_t i = 0; i < 2 * n; ++i) cuts.push_back(uniform(lo, hi));
    std::sort(cuts.begin(), cuts.end());
    IntervalUnion out;
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
      out.emplace_back(cuts[i], cuts[i + 1], coin(), coin());
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace speccalc::testing
