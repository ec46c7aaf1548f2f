#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "speccalc/function_spec.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

struct CountingSamples {
  struct Point {
    double lambda;
    std::uint64_t count;
    friend bool operator==(const Point&, const Point&) = default;
  };

  std::vector<Point> points;
  std::string source_label;

  /// Throws InvariantError unless lambdas are positive and strictly increasing
  /// and counts nondecreasing.
  void validate() const;

  friend bool operator==(const CountingSamples&, const CountingSamples&) = default;
};

namespace growth {

/// N ~ C Lambda^d.
struct Poly {
  double d;
  double C;
};
/// N ~ exp(c Lambda^alpha).
struct Stretched {
  double c;
  double alpha;
};
/// N ~ c log Lambda.
struct Log {
  double c;
};
struct Slower {};
struct Unclassified {
  std::string reason;
};

}  // namespace growth

using GrowthClass =
    std::variant<growth::Poly, growth::Stretched, growth::Log, growth::Slower, growth::Unclassified>;

/// "poly", "stretched", "log", "slower" or "unclassified".
std::string class_name(const GrowthClass& g);

/// Least-squares line y = slope x + intercept for one linearized model.
struct ModelFit {
  std::string model;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  /// sqrt(SS_res / SS_tot), 0 when SS_tot = 0.
  double residual = 0.0;
  std::size_t points = 0;
};

struct GrowthFit {
  GrowthClass verdict;
  /// Poly (log N vs log Lambda), Stretched (log log N vs log Lambda), Log (N vs log Lambda).
  std::array<ModelFit, 3> models;
  double window_lo = 0.0;
  double window_hi = 0.0;
  /// Runner-up residual minus best residual.
  double r2_gap = 0.0;
};

struct GrowthConfig {
  /// Window keeps points whose log N lies in the top fraction of the log-N range.
  double window_fraction = 0.75;
  std::uint64_t min_count = 3;
  std::size_t min_points = 8;
  double r2_gap_margin = 0.05;
  /// Slower when the Log-model slope is at most this multiple of its standard error.
  double slower_ratio = 0.1;
  /// Points of the default log-spaced grid.
  std::size_t grid_points = 80;
};

/// n log-spaced points from lo to hi inclusive (lo > 0, n >= 2, or n == 1 with lo == hi).
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Exact N(Lambda) on the grid. Throws GridBeyondTruncation past max|lambda|
/// of a truncated spectrum and ParameterError on a non-increasing or negative grid.
CountingSamples sample_counting(const DiscreteSpectrum& s, std::span<const double> grid);

/// Throws InsufficientSamples when fewer than min_points remain in the window.
GrowthFit classify_growth(const CountingSamples& samples, const GrowthConfig& config = {});

/// Samples on log_grid(min positive |lambda|, max |lambda|, grid_points) and classifies.
GrowthFit classify_spectrum(const DiscreteSpectrum& s, const GrowthConfig& config = {});

struct ReparamReport {
  struct Point {
    double lambda;
    std::uint64_t lhs;
    std::uint64_t rhs;
    bool empty_level_set;
  };

  std::vector<Point> points;
  std::size_t violations = 0;
  /// Grid points with f(0) > Lambda, counted as 0 on the right-hand side.
  std::size_t empty_level_sets = 0;

  bool holds() const { return violations == 0; }
};

/// N_{f(S)}(Lambda) against N_S(f^{-1}(Lambda)) on every grid point.
/// Throws DomainError for negative spectra.
ReparamReport check_reparam_identity(const DiscreteSpectrum& s, const FunctionSpec& f,
                                     std::span<const double> grid);

/// Sum of lambda^{-(d_e + delta)} mult over atoms with 1 <= lambda <= Lambda.
double stieltjes_F(const DiscreteSpectrum& s, double d_e, double delta, double lambda);

struct ConvolutionBoundReport {
  double exponent = 0.0;
  /// max F / Lambda^exponent over the lower half of the grid.
  double constant = 0.0;
  std::vector<double> values;
  std::vector<double> bounds;
  bool holds = false;
};

/// F(Lambda) <= C Lambda^{max(d_d - d_e + delta, 0)} with C fitted on the
/// lower half of the grid and checked on the upper half.
ConvolutionBoundReport convolution_bound_check(const DiscreteSpectrum& s, double d_d, double d_e,
                                               double delta, std::span<const double> grid);

struct TensorGrowthReport {
  std::vector<double> lambdas;
  std::vector<std::uint64_t> enumerated;
  std::vector<std::uint64_t> convolution;
  bool routes_agree = false;
  double fitted_slope = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// N_{S1 (x) S2}(Lambda) = sum_j N_{S2}(Lambda / a_j), via pair enumeration
/// and via the convolution sum. Fits log N against log Lambda over the top
/// `fit_decades` decades of the grid and checks slope <= d1 + d2 + eps.
/// Throws GridBeyondTruncation when a grid point can reach past a truncated factor.
TensorGrowthReport tensor_growth_bound_check(const DiscreteSpectrum& s1,
                                             const DiscreteSpectrum& s2, double d1, double d2,
                                             double eps, std::span<const double> grid,
                                             double fit_decades = 1.0);

struct SumGrowthReport {
  bool additive = false;
  CountingSamples first;
  CountingSamples second;
  CountingSamples sum;
  GrowthFit fit_first;
  GrowthFit fit_second;
  GrowthFit fit_sum;
  bool same_class = false;
  /// Vacuously true when the inputs are not in the same named class.
  bool preserved = false;
};

/// Exact additivity on the grid and class preservation under direct sum.
SumGrowthReport sum_growth_check(const DiscreteSpectrum& s1, const DiscreteSpectrum& s2,
                                 std::span<const double> grid, const GrowthConfig& config = {});

struct PowerClosureReport {
  double beta = 1.0;
  GrowthFit before;
  GrowthFit after;
  /// Class of `before` with parameters moved by Lambda -> Lambda^{1/beta}.
  GrowthClass expected;
  /// Largest relative parameter error between `after` and `expected`.
  double parameter_error = 0.0;
  bool holds = false;
};

/// Classifies S and S^beta. Holds when the named class is kept and the
/// exponent (d, alpha or c) moves as predicted within rel_tol.
PowerClosureReport power_closure_check(const DiscreteSpectrum& s, double beta,
                                       double rel_tol = 0.05, const GrowthConfig& config = {});

}  // namespace speccalc
