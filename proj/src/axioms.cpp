#include "speccalc/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "speccalc/errors.hpp"
#include "speccalc/numeric.hpp"

namespace speccalc {

namespace {

using Rng = std::mt19937_64;

class Tally {
 public:
  Tally(AxiomRecord& record, double tol) : record_(record), tol_(tol) {}

  void check(double lhs, double rhs, const std::string& description,
             std::vector<Operand> operands) {
    ++record_.instances;
    const double dev = relative_gap(lhs, rhs);
    if (!(dev <= record_.max_deviation)) record_.max_deviation = dev;
    if (!values_agree(lhs, rhs, tol_) && !record_.witness) {
      record_.witness = Witness{description, std::move(operands), lhs, rhs};
    }
  }

  void finish() {
    record_.verdict = record_.instances == 0 ? Verdict::NotApplicable
                      : record_.witness      ? Verdict::Fail
                                             : Verdict::Pass;
  }

 private:
  AxiomRecord& record_;
  double tol_;
};

double dyadic(Rng& rng, double max_value) {
  const auto top = std::max<std::int64_t>(1, static_cast<std::int64_t>(max_value * 8));
  return static_cast<double>(std::uniform_int_distribution<std::int64_t>(1, top)(rng)) / 8.0;
}

DiscreteSpectrum random_spectrum(Rng& rng, const AuditConfig& cfg) {
  const auto n = std::uniform_int_distribution<std::size_t>(1, cfg.max_atoms)(rng);
  std::uniform_int_distribution<std::uint64_t> mult(1, cfg.max_multiplicity);
  std::vector<DiscreteSpectrum::Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({dyadic(rng, cfg.max_value), mult(rng)});
  return DiscreteSpectrum::canonical(std::move(atoms));
}

std::vector<double> random_prefix(Rng& rng, const AuditConfig& cfg) {
  const auto n = std::uniform_int_distribution<std::size_t>(0, cfg.max_atoms)(rng);
  std::vector<double> p(n);
  for (double& x : p) x = dyadic(rng, cfg.max_value);
  return p;
}

DiscreteSpectrum scaled_identity(double t, std::uint64_t n) { return DiscreteSpectrum({{t, n}}); }

void audit_finite(const Evaluator& e, const AuditConfig& cfg, AxiomReport& report) {
  Rng rng(cfg.seed);
  auto ev = [&e](const DiscreteSpectrum& s) { return e.evaluate(s); };

  Tally a1(report[Axiom::A1], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto s = random_spectrum(rng, cfg);
    auto list = s.expanded();
    std::shuffle(list.begin(), list.end(), rng);
    const auto p = DiscreteSpectrum::from_eigenvalues(list, "permuted");
    a1.check(ev(s), ev(p), "E(S) vs E(permuted relabeled S)", {s, p});
  }
  a1.finish();

  Tally a2(report[Axiom::A2], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto x = random_spectrum(rng, cfg);
    const auto y = random_spectrum(rng, cfg);
    a2.check(ev(direct_sum(x, y)), ev(x) + ev(y), "E(X (+) Y) vs E(X) + E(Y)", {x, y});
  }
  a2.finish();

  Tally a3(report[Axiom::A3], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    std::vector<DiscreteSpectrum> blocks;
    if (i == 0) {
      blocks = {DiscreteSpectrum({{1.0, 1}}), DiscreteSpectrum({{1.0, 1}})};
    } else {
      for (const auto& a : random_spectrum(rng, cfg).atoms()) {
        blocks.push_back(DiscreteSpectrum({a}));
      }
    }
    std::vector<DiscreteSpectrum::Atom> all;
    CompensatedSum rhs;
    for (const auto& b : blocks) {
      all.insert(all.end(), b.atoms().begin(), b.atoms().end());
      rhs += ev(b);
    }
    const auto x = DiscreteSpectrum::canonical(std::move(all));
    std::vector<Operand> ops{x};
    ops.insert(ops.end(), blocks.begin(), blocks.end());
    a3.check(ev(x), rhs.value(), "E(sum lambda_j P_j) vs sum E(lambda_j P_j)", std::move(ops));
  }
  a3.finish();

  Tally a4(report[Axiom::A4], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto s = random_spectrum(rng, cfg);
    const double top = s.max_modulus();
    const auto k_end = static_cast<std::uint64_t>(std::ceil(top));
    double last = 0.0;
    for (std::uint64_t k = 1; k <= k_end; ++k) {
      last = ev(apply_calculus(s, FunctionSpec::truncate_band(static_cast<double>(k))));
    }
    const auto bound = scaled_identity(top, std::max(cfg.dimension, s.total_multiplicity()));
    a4.check(last, ev(s), "lim E(TruncateBand(k)(X)) vs E(X), dominated by max|lambda| I_n",
             {s, bound});
  }
  a4.finish();

  Tally a5(report[Axiom::A5], cfg.tol);
  const auto id = scaled_identity(1.0, cfg.dimension);
  const double e_id = ev(id);
  if (!(e_id > 0) || !std::isfinite(e_id)) {
    a5.check(e_id, 1.0, "normalization 0 < E(I_n) < inf", {id});
  }
  for (double t : cfg.scaling_grid) {
    const auto ti = scaled_identity(t, cfg.dimension);
    a5.check(ev(ti), t * e_id, "E(t I_n) vs t E(I_n) at t=" + format_double(t), {ti, id});
  }
  a5.finish();
}

void audit_diagonal(const Evaluator& e, const AuditConfig& cfg, AxiomReport& report) {
  Rng rng(cfg.seed);
  auto ev = [&e](const EventuallyConstantDiagonal& x) { return e.evaluate_diagonal(x); };
  auto random_diagonal = [&] {
    auto p = random_prefix(rng, cfg);
    const double tail = std::bernoulli_distribution(0.25)(rng) ? 0.0 : dyadic(rng, cfg.max_value);
    return EventuallyConstantDiagonal(std::move(p), tail);
  };

  Tally a1(report[Axiom::A1], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto x = random_diagonal();
    auto p = x.prefix();
    std::shuffle(p.begin(), p.end(), rng);
    const EventuallyConstantDiagonal y(std::move(p), x.tail());
    a1.check(ev(x), ev(y), "E(D_x) vs E(D_x with permuted prefix)", {x, y});
  }
  a1.finish();

  Tally a2(report[Axiom::A2], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto s = random_spectrum(rng, cfg);
    const auto x = i % 2 ? random_diagonal()
                         : EventuallyConstantDiagonal::from_spectrum(random_spectrum(rng, cfg));
    const auto fs = EventuallyConstantDiagonal::from_spectrum(s);
    a2.check(ev(block_sum(s, x)), ev(fs) + ev(x), "E(S (+) D_x) vs E(S) + E(D_x)", {s, x});
  }
  a2.finish();

  Tally a3(report[Axiom::A3], cfg.tol);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const double l1 = i == 0 ? 1.0 : dyadic(rng, cfg.max_value);
    const double l2 = i == 0 ? 1.0 : dyadic(rng, cfg.max_value);
    const auto m = i == 0 ? 1 : std::uniform_int_distribution<std::size_t>(0, cfg.max_atoms)(rng);
    const EventuallyConstantDiagonal x(std::vector<double>(m, l1), l2);
    const EventuallyConstantDiagonal pa(std::vector<double>(m, l1), 0.0);
    const EventuallyConstantDiagonal pc(std::vector<double>(m, 0.0), l2);
    a3.check(ev(x), ev(pa) + ev(pc), "E(l1 P_A + l2 P_A^c) vs E(l1 P_A) + E(l2 P_A^c)",
             {x, pa, pc});
  }
  a3.finish();

  Tally a4(report[Axiom::A4], cfg.tol);
  const auto id = EventuallyConstantDiagonal::identity();
  double last = 0.0;
  for (std::size_t k = 1; k <= cfg.k_max; ++k) {
    last = ev(EventuallyConstantDiagonal::projection(k));
  }
  a4.check(last, ev(id), "E(P_k) at k=" + std::to_string(cfg.k_max) + " vs E(I), P_k increasing to I",
           {EventuallyConstantDiagonal::projection(cfg.k_max), id});
  a4.finish();

  Tally a5(report[Axiom::A5], cfg.tol);
  const double e_id = ev(id);
  if (!(e_id > 0) || !std::isfinite(e_id)) a5.check(e_id, 1.0, "normalization 0 < E(I) < inf", {id});
  for (double t : cfg.scaling_grid) {
    const auto ti = id.scaled(t);
    a5.check(ev(ti), t * e_id, "E(t I) vs t E(I) at t=" + format_double(t), {ti, id});
  }
  a5.finish();
}

}  // namespace

const char* axiom_id(Axiom a) {
  static constexpr const char* ids[] = {"A1", "A2", "A3", "A4", "A5"};
  return ids[static_cast<int>(a)];
}

const char* axiom_name(Axiom a) {
  static constexpr const char* names[] = {
      "unitary invariance", "extensivity on orthogonal sums", "projector locality",
      "dominated continuity", "normalization and growth bound"};
  return names[static_cast<int>(a)];
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotApplicable:
      return "not_applicable";
  }
  return "unknown";
}

std::vector<Axiom> AxiomReport::failed() const {
  std::vector<Axiom> out;
  for (Axiom a : kAllAxioms) {
    if ((*this)[a].verdict == Verdict::Fail) out.push_back(a);
  }
  return out;
}

bool values_agree(double lhs, double rhs, double tol) {
  constexpr double exact_limit = 9007199254740992.0;
  const bool integral = std::floor(lhs) == lhs && std::floor(rhs) == rhs &&
                        std::abs(lhs) < exact_limit && std::abs(rhs) < exact_limit;
  if (integral) return lhs == rhs;
  return relative_gap(lhs, rhs) <= tol;
}

AxiomReport audit_axioms(const Evaluator& e, const AuditConfig& config) {
  if (!(config.tol > 0)) throw ParameterError("audit tolerance must be > 0");
  if (config.max_atoms == 0 || config.max_multiplicity == 0 || config.dimension == 0) {
    throw ParameterError("audit sizes must be positive");
  }
  if (!(config.max_value > 0)) throw ParameterError("audit max_value must be > 0");
  AxiomReport report;
  report.evaluator = e.name();
  report.domain = e.domain();
  for (Axiom a : kAllAxioms) report[a].axiom = a;
  if (e.domain() == EvaluatorDomain::FiniteSpectra) {
    audit_finite(e, config, report);
  } else {
    audit_diagonal(e, config, report);
  }
  return report;
}

}  // namespace speccalc
