#include "speccalc/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "speccalc/errors.hpp"

namespace speccalc {

std::vector<double> decreasing_rearrangement(const DiscreteSpectrum& s) {
  std::vector<double> v = s.expanded();
  std::sort(v.begin(), v.end(), [](double a, double b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    return ma != mb ? ma > mb : a > b;
  });
  return v;
}

PreorderResult preceq(const DiscreteSpectrum& x, const DiscreteSpectrum& y,
                      std::optional<std::size_t> k_max) {
  const auto vx = decreasing_rearrangement(x);
  const auto vy = decreasing_rearrangement(y);
  const std::size_t k_end = k_max.value_or(std::max(vx.size(), vy.size()));
  PreorderResult r;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < k_end; ++k) {
    sx += k < vx.size() ? vx[k] : 0.0;
    sy += k < vy.size() ? vy[k] : 0.0;
    r.lhs = sx;
    r.rhs = sy;
    if (sx > sy) {
      r.holds = false;
      r.first_violation_k = k + 1;
      return r;
    }
  }
  return r;
}

bool admitted_convex(const FunctionSpec& phi) {
  const auto& node = phi.node();
  if (std::holds_alternative<FunctionSpec::Identity>(node)) return true;
  if (const auto* a = std::get_if<FunctionSpec::Affine>(&node)) return a->a >= 0 && a->b == 0;
  if (const auto* p = std::get_if<FunctionSpec::Power>(&node)) return p->beta >= 1;
  if (const auto* pl = std::get_if<FunctionSpec::PiecewiseLinear>(&node)) {
    if (phi(0.0) != 0.0) return false;
    double prev = 0.0;
    for (std::size_t i = 1; i < pl->knots.size(); ++i) {
      const auto& [t0, v0] = pl->knots[i - 1];
      const auto& [t1, v1] = pl->knots[i];
      const double slope = (v1 - v0) / (t1 - t0);
      if (slope < prev) return false;
      prev = slope;
    }
    return true;
  }
  return false;
}

FunctionSpec hinge(double a) {
  if (!(a >= 0) || !std::isfinite(a)) throw ParameterError("hinge needs a >= 0");
  return FunctionSpec::piecewise_linear({{a - 1, 0.0}, {a, 0.0}, {a + 1, 1.0}});
}

ConvexTraceReport convex_trace_monotonicity_check(const DiscreteSpectrum& x,
                                                  const DiscreteSpectrum& y,
                                                  const FunctionSpec& phi) {
  if (!admitted_convex(phi)) {
    throw ParameterError(phi.describe() + " is not in the admitted convex set");
  }
  if (!x.nonnegative() || !y.nonnegative()) {
    throw DomainError("convex trace check needs nonnegative spectra");
  }
  const auto order = preceq(x, y);
  if (!order.holds) {
    throw PreorderNotEstablished("X is not below Y: prefix " +
                                 std::to_string(*order.first_violation_k) + " violates");
  }
  ConvexTraceReport r;
  r.trace_x = trace(apply_calculus(x, phi));
  r.trace_y = trace(apply_calculus(y, phi));
  const double scale = std::max({1.0, std::abs(r.trace_x), std::abs(r.trace_y)});
  r.holds = r.trace_x <= r.trace_y + 1e-12 * scale;
  return r;
}

MajorizedPair generate_majorized_pair(std::mt19937_64& rng, std::size_t max_len,
                                      double max_value) {
  if (max_len == 0) throw ParameterError("pair length must be >= 1");
  constexpr double unit = 1.0 / 1024.0;
  const auto top = static_cast<std::int64_t>(max_value * 1024);
  if (top < 1) throw ParameterError("max_value is below the lattice step");
  const auto n = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  std::uniform_int_distribution<std::int64_t> lattice(1, top);
  std::vector<std::int64_t> ky(n);
  for (auto& k : ky) k = lattice(rng);

  std::vector<std::int64_t> kx = ky;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const auto moves = std::uniform_int_distribution<int>(0, 2 * static_cast<int>(n))(rng);
  for (int m = 0; m < moves; ++m) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (std::bernoulli_distribution(0.5)(rng) || kx[i] == kx[j]) {
      kx[i] = std::uniform_int_distribution<std::int64_t>(0, kx[i])(rng);
    } else {
      const std::size_t hi = kx[i] > kx[j] ? i : j;
      const std::size_t lo = hi == i ? j : i;
      const std::int64_t d = std::uniform_int_distribution<std::int64_t>(0, (kx[hi] - kx[lo]) / 2)(rng);
      kx[hi] -= d;
      kx[lo] += d;
    }
  }

  auto to_spectrum = [&](const std::vector<std::int64_t>& k) {
    std::vector<double> v(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) v[i] = static_cast<double>(k[i]) * unit;
    return DiscreteSpectrum::from_eigenvalues(v);
  };
  return {to_spectrum(kx), to_spectrum(ky)};
}

}  // namespace speccalc
