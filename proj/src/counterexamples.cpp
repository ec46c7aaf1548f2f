#include "speccalc/counterexamples.hpp"

#include <algorithm>
#include <cmath>

#include "speccalc/errors.hpp"

namespace speccalc {

double tail_evaluate(const EventuallyConstantDiagonal& x) { return x.tail(); }

double opnorm_evaluate(const DiscreteSpectrum& s) { return s.max_modulus(); }

double OpNormEvaluator::evaluate_diagonal(const EventuallyConstantDiagonal& x) const {
  double m = std::abs(x.tail());
  for (double v : x.prefix()) m = std::max(m, std::abs(v));
  return m;
}

DominatedContinuityReport dominated_continuity_violation_report(std::size_t k_max,
                                                                 const AuditConfig& audit) {
  if (k_max == 0) throw ParameterError("k_max must be >= 1");
  DominatedContinuityReport r;
  r.k_max = k_max;
  const auto id = EventuallyConstantDiagonal::identity();
  r.identity_value = tail_evaluate(id);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double v = tail_evaluate(EventuallyConstantDiagonal::projection(k));
    r.projection_values.push_back(v);
    r.gaps.push_back(std::abs(v - r.identity_value));
  }
  r.violated = r.gaps.back() != 0.0;
  r.control_violated = tail_evaluate(id) != r.identity_value;
  r.verdict = r.violated ? "A4 violated: monotone dominated sequence with non-convergent evaluation"
                         : "no violation";
  AuditConfig cfg = audit;
  cfg.k_max = k_max;
  r.audit = audit_axioms(TailEvaluator{}, cfg);
  return r;
}

LocalityReport locality_violation_report(std::uint64_t n, double c, const AuditConfig& audit) {
  if (n < 2) throw ParameterError("locality report needs N >= 2");
  if (!(c > 0) || !std::isfinite(c)) throw ParameterError("locality report needs c > 0");
  LocalityReport r;
  r.n = n;
  r.c = c;
  r.lhs = opnorm_evaluate(DiscreteSpectrum({{c, n}}));
  const double piece = opnorm_evaluate(DiscreteSpectrum({{c, 1}}));
  r.rhs = piece * static_cast<double>(n);
  r.violated = r.lhs != r.rhs;
  r.verdict = r.violated ? "A3 violated" : "no violation";
  r.audit = audit_axioms(OpNormEvaluator{}, audit);
  for (Axiom a : r.audit.failed()) {
    (a == Axiom::A3 ? r.paper_asserted : r.additional).push_back(a);
  }
  return r;
}

}  // namespace speccalc
