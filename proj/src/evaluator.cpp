#include "speccalc/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speccalc/errors.hpp"
#include "speccalc/numeric.hpp"

namespace speccalc {

namespace {

DiscreteSpectrum rank_one(double lambda) { return DiscreteSpectrum({{lambda, 1}}); }

DiscreteSpectrum projection(std::uint64_t rank) {
  if (rank == 0) return {};
  return DiscreteSpectrum({{1.0, rank}});
}

}  // namespace

MonotoneTable::MonotoneTable(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second)) {
      throw InvariantError("table knots must be finite");
    }
    if (i > 0 && !(knots_[i - 1].first < knots_[i].first)) {
      throw InvariantError("table abscissae must be strictly increasing");
    }
    if (i > 0 && knots_[i - 1].second > knots_[i].second) {
      throw InvariantError("table values must be nondecreasing");
    }
  }
}

double MonotoneTable::operator()(double t) const {
  if (knots_.empty()) throw DomainError("empty profile table");
  if (t <= knots_.front().first) return knots_.front().second;
  if (t >= knots_.back().first) return knots_.back().second;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, const auto& k) { return v < k.first; });
  const auto lo = hi - 1;
  if (t == lo->first) return lo->second;
  const double w = (t - lo->first) / (hi->first - lo->first);
  const double v = lo->second + w * (hi->second - lo->second);
  return std::clamp(v, lo->second, hi->second);
}

TraceProfile TraceProfile::from_spec(FunctionSpec spec) {
  if (!spec.monotone()) throw NotMonotone("profile " + spec.describe() + " is not monotone");
  TraceProfile p;
  p.origin_zero_ = spec(0.0) == 0.0;
  p.rep_ = std::move(spec);
  return p;
}

TraceProfile TraceProfile::from_table(MonotoneTable table) {
  if (table.empty()) throw InvariantError("profile table needs at least one knot");
  TraceProfile p;
  p.origin_zero_ = table(0.0) == 0.0;
  p.rep_ = std::move(table);
  return p;
}

double TraceProfile::operator()(double t) const {
  return std::visit([t](const auto& h) { return h(t); }, rep_);
}

std::string TraceProfile::describe() const {
  if (const auto* s = spec()) return s->describe();
  return "table[" + std::to_string(table()->knots().size()) + "]";
}

const char* to_string(EvaluatorDomain domain) {
  switch (domain) {
    case EvaluatorDomain::FiniteSpectra:
      return "finite_spectra";
    case EvaluatorDomain::EventuallyConstantDiagonals:
      return "eventually_constant_diagonals";
  }
  return "unknown";
}

double Evaluator::evaluate_diagonal(const EventuallyConstantDiagonal& x) const {
  if (!x.finite_rank()) {
    throw DomainError(name() + " is not defined on diagonals with a nonzero tail");
  }
  return evaluate(x.prefix_spectrum());
}

TraceFormEvaluator::TraceFormEvaluator(TraceProfile profile, double c)
    : profile_(std::move(profile)), c_(c) {
  if (!std::isfinite(c_) || !(c_ > 0)) throw ParameterError("trace-form constant must be > 0");
}

std::string TraceFormEvaluator::name() const {
  return "trace_form(h=" + profile_.describe() + ", c=" + format_double(c_) + ")";
}

double TraceFormEvaluator::evaluate(const DiscreteSpectrum& s) const {
  CompensatedSum sum;
  for (const auto& a : s.atoms()) sum += profile_(a.value) * static_cast<double>(a.multiplicity);
  return c_ * sum.value();
}

double TraceFormEvaluator::evaluate_diagonal(const EventuallyConstantDiagonal& x) const {
  const double head = evaluate(x.prefix_spectrum());
  if (x.finite_rank() || profile_(x.tail()) == 0.0) return head;
  return std::numeric_limits<double>::infinity();
}

double signed_evaluate(const Evaluator& e, const DiscreteSpectrum& s) {
  std::vector<DiscreteSpectrum::Atom> pos;
  std::vector<DiscreteSpectrum::Atom> neg;
  for (const auto& a : s.atoms()) {
    if (a.value > 0) pos.push_back(a);
    if (a.value < 0) neg.push_back({-a.value, a.multiplicity});
  }
  const auto xp = DiscreteSpectrum::canonical(std::move(pos));
  const auto xm = DiscreteSpectrum::canonical(std::move(neg));
  return e.evaluate(xp) - e.evaluate(xm);
}

TraceProfile calibrate_profile(const Evaluator& e, std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("calibration grid is empty");
  std::vector<std::pair<double, double>> knots{{0.0, 0.0}};
  for (double lambda : grid) {
    if (!(lambda > knots.back().first) || !std::isfinite(lambda)) {
      throw ParameterError("calibration grid must be positive and strictly increasing");
    }
    const double v = e.evaluate(rank_one(lambda));
    if (!std::isfinite(v) || v < 0) {
      throw DomainError(e.name() + " is negative or not finite at rank-one lambda=" +
                        format_double(lambda));
    }
    const auto& [lo, vlo] = knots.back();
    if (v < vlo) {
      throw NonMonotoneEvaluator("calibration decreases between lambda=" + format_double(lo) +
                                     " and lambda=" + format_double(lambda),
                                 lo, lambda, vlo, v);
    }
    knots.emplace_back(lambda, v);
  }
  return TraceProfile::from_table(MonotoneTable(std::move(knots)));
}

std::variant<Scaling, Incompatible> check_scaling_uniqueness(const TraceProfile& h1, double c1,
                                                             const TraceProfile& h2, double c2,
                                                             std::span<const double> grid,
                                                             double tol) {
  if (grid.empty()) throw ParameterError("scaling grid is empty");
  if (!(tol > 0)) throw ParameterError("scaling tolerance must be > 0");
  std::vector<double> ratios;
  for (double t : grid) {
    const double v1 = h1(t);
    if (v1 != 0.0) ratios.push_back(h2(t) / v1);
  }
  if (ratios.empty()) throw DegenerateProfile("h1 vanishes on the whole grid");
  std::sort(ratios.begin(), ratios.end());
  const std::size_t m = ratios.size();
  const double a = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);

  Incompatible worst{std::numeric_limits<double>::quiet_NaN(), 0, 0, 0, {}};
  for (double t : grid) {
    const double v1 = h1(t);
    const double v2 = h2(t);
    const double dev = relative_gap(v2, a * v1);
    if (dev > worst.deviation) worst = {t, v1, v2, dev, "h2 != a*h1"};
  }
  if (worst.deviation > tol) return worst;
  if (!(a > 0)) return Incompatible{worst.lambda, 0, 0, INFINITY, "scale factor is not positive"};
  const double cdev = relative_gap(c2, c1 / a);
  if (cdev > tol) {
    return Incompatible{std::numeric_limits<double>::quiet_NaN(), c1, c2, cdev, "c2 != c1/a"};
  }
  return Scaling{a};
}

MeasurePair measure_pair(const Evaluator& e, const DiscreteSpectrum& s, const IntervalUnion& b) {
  std::uint64_t nu = 0;
  for (const auto& a : s.atoms()) {
    if (contains(b, a.value)) nu += a.multiplicity;
  }
  return {static_cast<double>(nu), e.evaluate(projection(nu))};
}

double RNDensity::reconstruct(const IntervalUnion& b) const {
  CompensatedSum sum;
  for (const auto& entry : entries) {
    if (contains(b, entry.lambda)) sum += entry.w * static_cast<double>(entry.multiplicity);
  }
  return sum.value();
}

RNDensity rn_density(const Evaluator& e, const DiscreteSpectrum& s) {
  RNDensity out;
  out.entries.reserve(s.size());
  for (const auto& a : s.atoms()) {
    const double mu = e.evaluate(projection(a.multiplicity));
    if (!std::isfinite(mu) || mu < 0) {
      throw DomainError(e.name() + " gives a negative or infinite projection value");
    }
    out.entries.push_back({a.value, mu / static_cast<double>(a.multiplicity), a.multiplicity});
  }
  return out;
}

}  // namespace speccalc
