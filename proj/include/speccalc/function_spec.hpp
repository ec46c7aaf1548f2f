#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace speccalc {

/// A closed algebra of real functions applied to spectra by functional calculus.
///
/// Every spec is an immutable value. Monotonicity and boundedness are derived
/// structurally, so they are decidable and survive serialization.
///
/// Domains: Power is defined on [0, inf) only; all other primitives on the
/// whole real line. PiecewiseLinear extends linearly past its end knots using
/// the first and last segment slopes (a single knot is a constant).
class FunctionSpec {
 public:
  struct Identity {};
  struct Affine {
    double a;
    double b;
  };
  struct Power {
    double beta;
  };
  /// t -> exp(c t)
  struct ExpScale {
    double c;
  };
  /// t -> log t on t >= 1, 0 below.
  struct LogPos {};
  /// Indicator of the closed interval [lo, hi].
  struct Indicator {
    double lo;
    double hi;
  };
  /// 1 on |t| <= cutoff, linear down to 0 at |t| = 2 cutoff, 0 beyond.
  struct CutoffRamp {
    double cutoff;
  };
  struct PiecewiseLinear {
    std::vector<std::pair<double, double>> knots;
  };
  struct Compose {
    std::shared_ptr<const FunctionSpec> outer;
    std::shared_ptr<const FunctionSpec> inner;
  };
  /// t -> t * 1_{[-k, k]}(t)
  struct TruncateBand {
    double k;
  };

  using Node = std::variant<Identity, Affine, Power, ExpScale, LogPos, Indicator, CutoffRamp,
                            PiecewiseLinear, Compose, TruncateBand>;

  FunctionSpec() : node_(Identity{}) {}

  static FunctionSpec identity();
  static FunctionSpec affine(double a, double b);
  static FunctionSpec power(double beta);
  static FunctionSpec exp_scale(double c);
  static FunctionSpec log_pos();
  static FunctionSpec indicator(double lo, double hi);
  static FunctionSpec cutoff_ramp(double cutoff);
  static FunctionSpec piecewise_linear(std::vector<std::pair<double, double>> knots);
  static FunctionSpec compose(FunctionSpec outer, FunctionSpec inner);
  static FunctionSpec truncate_band(double k);

  /// Evaluates at t; throws DomainError outside the declared domain.
  double operator()(double t) const;

  /// True only when the spec is provably nondecreasing on its domain.
  bool monotone() const;
  /// True when the spec is provably bounded on its domain.
  bool bounded() const;
  /// True when the spec provably tends to +inf as t -> +inf.
  bool unbounded_above() const;

  const Node& node() const { return node_; }
  std::string kind() const;
  std::string describe() const;

  friend bool operator==(const FunctionSpec& lhs, const FunctionSpec& rhs);

 private:
  explicit FunctionSpec(Node node) : node_(std::move(node)) {}

  Node node_;
};

double eval_function(const FunctionSpec& f, double t);

/// sup{ t >= 0 : f(t) <= level } with sup of the empty set equal to 0.
///
/// A positive result is the largest double t with f(t) <= level as evaluated
/// in floating point, so `t <= generalized_inverse(f, level)` and
/// `f(t) <= level` agree for every nonnegative double t. A zero closed form
/// is returned as is.
///
/// Throws NotMonotone / NotUnbounded when f is not provably nondecreasing and
/// unbounded on [0, inf).
double generalized_inverse(const FunctionSpec& f, double level);

}  // namespace speccalc
