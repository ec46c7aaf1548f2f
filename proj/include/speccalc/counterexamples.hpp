#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "speccalc/axioms.hpp"
#include "speccalc/diagonal.hpp"
#include "speccalc/evaluator.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

/// Limit of the diagonal entries; on eventually constant diagonals every
/// nonprincipal ultrafilter limit equals the tail value.
double tail_evaluate(const EventuallyConstantDiagonal& x);

/// Operator norm max|lambda|, 0 on the empty spectrum.
double opnorm_evaluate(const DiscreteSpectrum& s);

/// Tail limit on eventually constant diagonals. Finite spectra have tail 0.
class TailEvaluator : public Evaluator {
 public:
  std::string name() const override { return "tail_limit"; }
  double evaluate(const DiscreteSpectrum&) const override { return 0.0; }
  EvaluatorDomain domain() const override { return EvaluatorDomain::EventuallyConstantDiagonals; }
  double evaluate_diagonal(const EventuallyConstantDiagonal& x) const override {
    return tail_evaluate(x);
  }
};

class OpNormEvaluator : public Evaluator {
 public:
  std::string name() const override { return "operator_norm"; }
  double evaluate(const DiscreteSpectrum& s) const override { return opnorm_evaluate(s); }
  /// sup |x_n|.
  double evaluate_diagonal(const EventuallyConstantDiagonal& x) const override;
};

struct DominatedContinuityReport {
  std::size_t k_max = 0;
  /// E(P_k), k = 1..k_max.
  std::vector<double> projection_values;
  /// |E(P_k) - E(I)|.
  std::vector<double> gaps;
  double identity_value = 0.0;
  bool violated = false;
  /// Control: the constant sequence I, I, ... evaluated the same way.
  bool control_violated = false;
  std::string verdict;
  AxiomReport audit;
};

/// P_k increases strongly to I with P_k <= I, yet the tail limit is 0 along
/// the sequence and 1 at the limit. Throws ParameterError if k_max == 0.
DominatedContinuityReport dominated_continuity_violation_report(std::size_t k_max,
                                                                 const AuditConfig& audit = {});

struct LocalityReport {
  std::uint64_t n = 0;
  double c = 0.0;
  /// E(c I_N).
  double lhs = 0.0;
  /// Sum over the N rank-one projections of E(c P_j).
  double rhs = 0.0;
  bool violated = false;
  std::string verdict;
  std::vector<Axiom> paper_asserted;
  std::vector<Axiom> additional;
  AxiomReport audit;
};

/// Splits c I_N into N rank-one pieces under the operator norm. Throws
/// ParameterError unless n >= 2 and c > 0.
LocalityReport locality_violation_report(std::uint64_t n, double c, const AuditConfig& audit = {});

}  // namespace speccalc
