#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "speccalc/function_spec.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

struct PreorderResult {
  bool holds = true;
  /// 1-based index of the first prefix with sum_X > sum_Y.
  std::optional<std::size_t> first_violation_k;
  /// Prefix sums at the violation (or at the last compared k when it holds).
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Eigenvalues with multiplicity, ordered by nonincreasing |lambda|, equal
/// moduli by descending signed value.
std::vector<double> decreasing_rearrangement(const DiscreteSpectrum& s);

/// X <= Y in the spectral preorder: every prefix sum of the decreasing
/// rearrangement of X is at most that of Y, comparing up to k_max terms
/// (default: the larger total count, shorter side padded with zeros).
PreorderResult preceq(const DiscreteSpectrum& x, const DiscreteSpectrum& y,
                      std::optional<std::size_t> k_max = std::nullopt);

/// True for Identity, Affine(a >= 0, 0), Power(beta >= 1) and PiecewiseLinear
/// specs with f(0) = 0 and nondecreasing nonnegative slopes.
bool admitted_convex(const FunctionSpec& phi);

/// max(t - a, 0) as a PiecewiseLinear spec, a >= 0.
FunctionSpec hinge(double a);

struct ConvexTraceReport {
  double trace_x = 0.0;
  double trace_y = 0.0;
  bool holds = false;
};

/// Tr(phi(X)) <= Tr(phi(Y)) + 1e-12 max(1, |Tr phi(X)|, |Tr phi(Y)|).
///
/// Throws ParameterError for phi outside the admitted set, DomainError for
/// negative inputs and PreorderNotEstablished unless preceq(X, Y).
ConvexTraceReport convex_trace_monotonicity_check(const DiscreteSpectrum& x,
                                                  const DiscreteSpectrum& y,
                                                  const FunctionSpec& phi);

struct MajorizedPair {
  DiscreteSpectrum x;
  DiscreteSpectrum y;
};

/// Random nonnegative Y with atoms on the 2^-10 lattice in (0, max_value],
/// and X derived from Y by shrinking entries and by transfers from a larger
/// to a smaller entry that never cross. All arithmetic is exact.
MajorizedPair generate_majorized_pair(std::mt19937_64& rng, std::size_t max_len,
                                      double max_value = 64.0);

}  // namespace speccalc
