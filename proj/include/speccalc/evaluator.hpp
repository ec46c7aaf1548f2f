#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "speccalc/diagonal.hpp"
#include "speccalc/function_spec.hpp"
#include "speccalc/interval.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

/// Sorted (lambda, h(lambda)) knots, linearly interpolated between knots and
/// extended by the end values outside them.
class MonotoneTable {
 public:
  MonotoneTable() = default;
  /// Throws InvariantError unless lambdas are strictly increasing and values nondecreasing.
  explicit MonotoneTable(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  bool empty() const { return knots_.empty(); }

  friend bool operator==(const MonotoneTable&, const MonotoneTable&) = default;

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// Nondecreasing profile h, given either as a monotone FunctionSpec or as a table.
class TraceProfile {
 public:
  /// Throws NotMonotone unless spec.monotone().
  static TraceProfile from_spec(FunctionSpec spec);
  static TraceProfile from_table(MonotoneTable table);

  double operator()(double t) const;

  bool is_table() const { return std::holds_alternative<MonotoneTable>(rep_); }
  const FunctionSpec* spec() const { return std::get_if<FunctionSpec>(&rep_); }
  const MonotoneTable* table() const { return std::get_if<MonotoneTable>(&rep_); }
  /// h(0) = 0.
  bool origin_zero() const { return origin_zero_; }
  std::string describe() const;

 private:
  TraceProfile() = default;

  std::variant<FunctionSpec, MonotoneTable> rep_;
  bool origin_zero_ = false;
};

enum class EvaluatorDomain {
  /// Finite spectra, read as zero-padded operators on l2.
  FiniteSpectra,
  /// Eventually constant diagonal operators.
  EventuallyConstantDiagonals,
};

const char* to_string(EvaluatorDomain domain);

/// Map from operators to [0, inf]; implementations must be deterministic.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  virtual std::string name() const = 0;
  virtual double evaluate(const DiscreteSpectrum& s) const = 0;
  virtual EvaluatorDomain domain() const { return EvaluatorDomain::FiniteSpectra; }

  /// Finite-rank diagonals go through evaluate(); a nonzero tail throws
  /// DomainError unless overridden.
  virtual double evaluate_diagonal(const EventuallyConstantDiagonal& x) const;
};

/// E(X) = c Tr(h(X)).
class TraceFormEvaluator : public Evaluator {
 public:
  /// Throws ParameterError unless c is finite and positive.
  TraceFormEvaluator(TraceProfile profile, double c);

  std::string name() const override;
  double evaluate(const DiscreteSpectrum& s) const override;
  /// +inf on a nonzero tail t with h(t) > 0.
  double evaluate_diagonal(const EventuallyConstantDiagonal& x) const override;

  const TraceProfile& profile() const { return profile_; }
  double c() const { return c_; }

 private:
  TraceProfile profile_;
  double c_;
};

class LambdaEvaluator : public Evaluator {
 public:
  using Fn = std::function<double(const DiscreteSpectrum&)>;

  LambdaEvaluator(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  std::string name() const override { return name_; }
  double evaluate(const DiscreteSpectrum& s) const override { return fn_(s); }

 private:
  std::string name_;
  Fn fn_;
};

/// E(X_+) - E(X_-), with X_- carrying the moduli of the negative eigenvalues.
double signed_evaluate(const Evaluator& e, const DiscreteSpectrum& s);

/// h(lambda) = E(lambda P) on rank-one spectra over a strictly increasing
/// positive grid, with (0, 0) prepended.
///
/// Throws NonMonotoneEvaluator at the first decrease, DomainError on a
/// non-finite or negative value and ParameterError on a bad grid.
TraceProfile calibrate_profile(const Evaluator& e, std::span<const double> grid);

struct Scaling {
  double a;
};

struct Incompatible {
  /// Grid point of the largest deviation; NaN when only the constants disagree.
  double lambda;
  double h1;
  double h2;
  double deviation;
  std::string reason;
};

/// Finds a with h2 = a h1 and c2 = c1 / a on the grid (a is the median of
/// h2/h1 where h1 != 0). Throws DegenerateProfile if h1 vanishes on the grid.
std::variant<Scaling, Incompatible> check_scaling_uniqueness(const TraceProfile& h1, double c1,
                                                             const TraceProfile& h2, double c2,
                                                             std::span<const double> grid,
                                                             double tol);

struct MeasurePair {
  double nu;
  double mu;
};

/// nu(B) = Tr E_S(B), mu(B) = E(E_S(B)).
MeasurePair measure_pair(const Evaluator& e, const DiscreteSpectrum& s, const IntervalUnion& b);

struct RNDensity {
  struct Entry {
    double lambda;
    double w;
    std::uint64_t multiplicity;
  };

  std::vector<Entry> entries;

  /// Sum of w(lambda) mult(lambda) over atoms in b.
  double reconstruct(const IntervalUnion& b) const;
};

/// w(lambda) = mu({lambda}) / nu({lambda}) per atom. Throws DomainError if a
/// projection evaluates negative or non-finite.
RNDensity rn_density(const Evaluator& e, const DiscreteSpectrum& s);

}  // namespace speccalc
