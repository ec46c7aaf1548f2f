#include "speccalc/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "speccalc/errors.hpp"
#include "speccalc/numeric.hpp"

namespace speccalc {

namespace {

ModelFit fit_line(std::string model, const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = x[i];
    a(i, 1) = 1.0;
    b(i) = y[i];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd r = b - a * coef;
  const double ss_res = r.squaredNorm();
  const double ss_tot = (b.array() - b.mean()).square().sum();
  const double sxx = (a.col(0).array() - a.col(0).mean()).square().sum();

  ModelFit fit;
  fit.model = std::move(model);
  fit.slope = coef(0);
  fit.intercept = coef(1);
  fit.points = x.size();
  fit.residual = ss_tot > 0 ? std::sqrt(std::max(ss_res / ss_tot, 0.0)) : 0.0;
  fit.slope_stderr = (n > 2 && sxx > 0) ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

void check_grid(std::span<const double> grid, bool positive) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (positive ? !(grid[i] > 0) : !(grid[i] >= 0))) {
      throw ParameterError("grid point " + format_double(grid[i]) + " is out of range");
    }
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      throw ParameterError("grid must be strictly increasing");
    }
  }
}

bool named(const GrowthClass& g) {
  return std::holds_alternative<growth::Poly>(g) || std::holds_alternative<growth::Stretched>(g) ||
         std::holds_alternative<growth::Log>(g);
}

}  // namespace

void CountingSamples::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].lambda > 0) || !std::isfinite(points[i].lambda)) {
      throw InvariantError("sample lambda must be positive and finite");
    }
    if (i > 0 && !(points[i - 1].lambda < points[i].lambda)) {
      throw InvariantError("sample lambdas must be strictly increasing");
    }
    if (i > 0 && points[i - 1].count > points[i].count) {
      throw InvariantError("sample counts must be nondecreasing");
    }
  }
}

std::string class_name(const GrowthClass& g) {
  struct {
    std::string operator()(const growth::Poly&) const { return "poly"; }
    std::string operator()(const growth::Stretched&) const { return "stretched"; }
    std::string operator()(const growth::Log&) const { return "log"; }
    std::string operator()(const growth::Slower&) const { return "slower"; }
    std::string operator()(const growth::Unclassified&) const { return "unclassified"; }
  } visitor;
  return std::visit(visitor, g);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0) || !(hi >= lo) || !std::isfinite(hi)) throw ParameterError("log grid needs 0 < lo <= hi");
  if (n == 0 || (n == 1 && lo != hi) || (n > 1 && lo == hi)) {
    throw ParameterError("log grid size does not match its range");
  }
  if (n == 1) return {lo};
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  for (std::size_t i = 1; i < n; ++i) {
    if (!(g[i - 1] < g[i])) throw ParameterError("log grid range is too narrow for its size");
  }
  return g;
}

CountingSamples sample_counting(const DiscreteSpectrum& s, std::span<const double> grid) {
  check_grid(grid, true);
  CountingSamples out;
  out.source_label = s.source_label();
  out.points.reserve(grid.size());
  for (double lambda : grid) {
    if (s.truncated() && lambda > s.max_modulus()) {
      throw GridBeyondTruncation("grid point " + format_double(lambda) +
                                 " exceeds the truncation horizon " + format_double(s.max_modulus()));
    }
    out.points.push_back({lambda, counting(s, lambda)});
  }
  return out;
}

GrowthFit classify_growth(const CountingSamples& samples, const GrowthConfig& config) {
  samples.validate();
  if (!(config.window_fraction > 0 && config.window_fraction <= 1)) {
    throw ParameterError("window_fraction must lie in (0, 1]");
  }
  const std::uint64_t min_count = std::max<std::uint64_t>(config.min_count, 1);
  std::vector<CountingSamples::Point> usable;
  for (const auto& p : samples.points) {
    if (p.count >= min_count) usable.push_back(p);
  }
  if (usable.size() < config.min_points) {
    throw InsufficientSamples(std::to_string(usable.size()) + " points with N >= " +
                              std::to_string(min_count) + ", need " +
                              std::to_string(config.min_points));
  }
  const double top = std::log(static_cast<double>(usable.back().count));
  const double bottom = std::log(static_cast<double>(usable.front().count));
  const double cut = top - config.window_fraction * (top - bottom) - 1e-12;

  std::vector<double> x, y_poly, y_log, x_str, y_str;
  GrowthFit fit;
  bool first = true;
  for (const auto& p : usable) {
    const double n = static_cast<double>(p.count);
    if (std::log(n) < cut) continue;
    if (first) fit.window_lo = p.lambda;
    first = false;
    fit.window_hi = p.lambda;
    x.push_back(std::log(p.lambda));
    y_poly.push_back(std::log(n));
    y_log.push_back(n);
    if (p.count >= 3) {
      x_str.push_back(std::log(p.lambda));
      y_str.push_back(std::log(std::log(n)));
    }
  }
  if (x.size() < config.min_points) {
    throw InsufficientSamples(std::to_string(x.size()) + " points in the fit window, need " +
                              std::to_string(config.min_points));
  }
  fit.models[0] = fit_line("poly", x, y_poly);
  fit.models[1] = x_str.size() >= 3 ? fit_line("stretched", x_str, y_str)
                                    : ModelFit{"stretched", 0, 0, 0, INFINITY, x_str.size()};
  fit.models[2] = fit_line("log", x, y_log);

  const ModelFit& lg = fit.models[2];
  if (y_log.front() == y_log.back() || lg.slope <= config.slower_ratio * lg.slope_stderr) {
    fit.verdict = growth::Slower{};
    return fit;
  }

  std::array<const ModelFit*, 3> order{&fit.models[0], &fit.models[1], &fit.models[2]};
  std::stable_sort(order.begin(), order.end(),
                   [](const ModelFit* a, const ModelFit* b) { return a->residual < b->residual; });
  const ModelFit& best = *order[0];
  fit.r2_gap = order[1]->residual - best.residual;
  if (!(fit.r2_gap >= config.r2_gap_margin)) {
    fit.verdict = growth::Unclassified{"best model " + best.model + " beats the runner-up by " +
                                       format_double(fit.r2_gap)};
    return fit;
  }
  if (best.model == "poly") {
    if (best.slope > 0) {
      fit.verdict = growth::Poly{best.slope, std::exp(best.intercept)};
    } else {
      fit.verdict = growth::Unclassified{"poly exponent is not positive"};
    }
  } else if (best.model == "stretched") {
    if (best.slope > 0 && best.slope < 1) {
      fit.verdict = growth::Stretched{std::exp(best.intercept), best.slope};
    } else {
      fit.verdict = growth::Unclassified{"stretched exponent " + format_double(best.slope) +
                                         " outside (0, 1)"};
    }
  } else {
    fit.verdict = growth::Log{best.slope};
  }
  return fit;
}

GrowthFit classify_spectrum(const DiscreteSpectrum& s, const GrowthConfig& config) {
  const double lo = s.min_positive_modulus();
  const double hi = s.max_modulus();
  if (!std::isfinite(lo) || !(hi > lo)) {
    throw InsufficientSamples("spectrum has fewer than two distinct nonzero moduli");
  }
  const auto grid = log_grid(lo, hi, config.grid_points);
  return classify_growth(sample_counting(s, grid), config);
}

ReparamReport check_reparam_identity(const DiscreteSpectrum& s, const FunctionSpec& f,
                                     std::span<const double> grid) {
  if (!s.nonnegative()) throw DomainError("reparametrization identity needs a nonnegative spectrum");
  check_grid(grid, false);
  const DiscreteSpectrum image = apply_calculus(s, f);
  if (!image.nonnegative()) throw DomainError("f maps the spectrum below 0");
  const double f0 = f(0.0);
  ReparamReport r;
  r.points.reserve(grid.size());
  for (double lambda : grid) {
    const std::uint64_t lhs = counting(image, lambda);
    const bool empty = f0 > lambda;
    const std::uint64_t rhs = empty ? 0 : counting(s, generalized_inverse(f, lambda));
    r.points.push_back({lambda, lhs, rhs, empty});
    if (lhs != rhs) ++r.violations;
    if (empty) ++r.empty_level_sets;
  }
  return r;
}

double stieltjes_F(const DiscreteSpectrum& s, double d_e, double delta, double lambda) {
  if (!s.nonnegative()) throw DomainError("stieltjes_F needs a nonnegative spectrum");
  if (!(d_e >= 0)) throw ParameterError("d_E must be >= 0");
  if (!(delta > 0 && delta < 1)) throw ParameterError("delta must lie in (0, 1)");
  if (!(lambda >= 1)) throw ParameterError("Lambda must be >= 1");
  const double p = -(d_e + delta);
  CompensatedSum sum;
  for (const auto& a : s.atoms()) {
    if (a.value < 1) continue;
    if (a.value > lambda) break;
    sum += std::pow(a.value, p) * static_cast<double>(a.multiplicity);
  }
  return sum.value();
}

ConvolutionBoundReport convolution_bound_check(const DiscreteSpectrum& s, double d_d, double d_e,
                                               double delta, std::span<const double> grid) {
  if (grid.size() < 2) throw ParameterError("convolution bound needs at least two grid points");
  check_grid(grid, true);
  ConvolutionBoundReport r;
  r.exponent = std::max(d_d - d_e + delta, 0.0);
  for (double lambda : grid) r.values.push_back(stieltjes_F(s, d_e, delta, lambda));
  const std::size_t half = grid.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    r.constant = std::max(r.constant, r.values[i] / std::pow(grid[i], r.exponent));
  }
  r.holds = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.bounds.push_back(r.constant * std::pow(grid[i], r.exponent));
    if (i >= half && r.values[i] > r.bounds[i] * (1 + 1e-12)) r.holds = false;
  }
  return r;
}

TensorGrowthReport tensor_growth_bound_check(const DiscreteSpectrum& s1,
                                             const DiscreteSpectrum& s2, double d1, double d2,
                                             double eps, std::span<const double> grid,
                                             double fit_decades) {
  if (grid.empty()) throw ParameterError("tensor check needs a grid");
  if (!(eps > 0)) throw ParameterError("eps must be > 0");
  if (!(fit_decades > 0)) throw ParameterError("fit_decades must be > 0");
  check_grid(grid, true);
  const double hi = grid.back();
  if (s1.truncated() && hi > s1.max_modulus() * s2.min_positive_modulus()) {
    throw GridBeyondTruncation("grid reaches past the truncation of the first factor");
  }
  if (s2.truncated() && hi > s2.max_modulus() * s1.min_positive_modulus()) {
    throw GridBeyondTruncation("grid reaches past the truncation of the second factor");
  }
  const DiscreteSpectrum product = tensor_product(s1, s2, hi);

  TensorGrowthReport r;
  r.bound = d1 + d2 + eps;
  r.routes_agree = true;
  std::vector<double> x, y;
  const double fit_lo = hi / std::pow(10.0, fit_decades);
  for (double lambda : grid) {
    const std::uint64_t e = counting(product, lambda);
    std::uint64_t c = 0;
    for (const auto& a : s1.atoms()) {
      c += a.multiplicity * (a.value == 0.0 ? s2.total_multiplicity()
                                            : s2.count_scaled_modulus_at_most(a.value, lambda));
    }
    r.lambdas.push_back(lambda);
    r.enumerated.push_back(e);
    r.convolution.push_back(c);
    if (e != c) r.routes_agree = false;
    if (lambda >= fit_lo && e > 0) {
      x.push_back(std::log(lambda));
      y.push_back(std::log(static_cast<double>(e)));
    }
  }
  if (x.size() < 2) throw InsufficientSamples("fewer than two nonzero counts in the fit window");
  r.fitted_slope = fit_line("poly", x, y).slope;
  r.holds = r.routes_agree && r.fitted_slope <= r.bound;
  return r;
}

SumGrowthReport sum_growth_check(const DiscreteSpectrum& s1, const DiscreteSpectrum& s2,
                                 std::span<const double> grid, const GrowthConfig& config) {
  SumGrowthReport r;
  r.first = sample_counting(s1, grid);
  r.second = sample_counting(s2, grid);
  r.sum = sample_counting(direct_sum(s1, s2), grid);
  r.additive = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (r.sum.points[i].count != r.first.points[i].count + r.second.points[i].count) {
      r.additive = false;
    }
  }
  r.fit_first = classify_growth(r.first, config);
  r.fit_second = classify_growth(r.second, config);
  r.fit_sum = classify_growth(r.sum, config);
  const std::string c1 = class_name(r.fit_first.verdict);
  r.same_class = named(r.fit_first.verdict) && c1 == class_name(r.fit_second.verdict);
  r.preserved = !r.same_class || class_name(r.fit_sum.verdict) == c1;
  return r;
}

PowerClosureReport power_closure_check(const DiscreteSpectrum& s, double beta, double rel_tol,
                                       const GrowthConfig& config) {
  if (!(beta > 0)) throw ParameterError("beta must be > 0");
  PowerClosureReport r;
  r.beta = beta;
  r.before = classify_spectrum(s, config);
  r.after = classify_spectrum(apply_calculus(s, FunctionSpec::power(beta)), config);
  double want = 0.0;
  double got = std::numeric_limits<double>::quiet_NaN();
  if (const auto* p = std::get_if<growth::Poly>(&r.before.verdict)) {
    r.expected = growth::Poly{p->d / beta, p->C};
    want = p->d / beta;
    if (const auto* q = std::get_if<growth::Poly>(&r.after.verdict)) got = q->d;
  } else if (const auto* st = std::get_if<growth::Stretched>(&r.before.verdict)) {
    r.expected = growth::Stretched{st->c, st->alpha / beta};
    want = st->alpha / beta;
    if (const auto* q = std::get_if<growth::Stretched>(&r.after.verdict)) got = q->alpha;
  } else if (const auto* lg = std::get_if<growth::Log>(&r.before.verdict)) {
    r.expected = growth::Log{lg->c / beta};
    want = lg->c / beta;
    if (const auto* q = std::get_if<growth::Log>(&r.after.verdict)) got = q->c;
  } else {
    r.expected = growth::Unclassified{"input is not in a named class"};
    r.parameter_error = INFINITY;
    return r;
  }
  r.parameter_error = std::isnan(got) ? INFINITY : relative_gap(got, want);
  r.holds = r.parameter_error <= rel_tol;
  return r;
}

}  // namespace speccalc
