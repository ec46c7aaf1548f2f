#include "speccalc/falsify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "speccalc/axioms.hpp"
#include "speccalc/counterexamples.hpp"
#include "speccalc/errors.hpp"
#include "speccalc/evaluator.hpp"
#include "speccalc/growth.hpp"
#include "speccalc/numeric.hpp"

namespace speccalc {

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kMaxWitnesses = 5;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Independent stream per test so each report depends only on the seed.
Rng stream(std::uint64_t seed, std::uint64_t test) {
  std::seed_seq seq{seed, test};
  return Rng(seq);
}

void add_witness(Report& r, Json w) {
  if (r.witnesses.size() < kMaxWitnesses) r.witnesses.push_back(std::move(w));
  r.pass = false;
}

Json error_witness(const std::string& section, const Error& e) {
  const char* kind = dynamic_cast<const InsufficientSamples*>(&e)    ? "insufficient_samples"
                     : dynamic_cast<const GridBeyondTruncation*>(&e) ? "grid_beyond_truncation"
                                                                     : "error";
  return {{"section", section}, {"error_kind", kind}, {"error", e.what()}};
}

Json params_json(ModelKind kind, std::uint64_t n, const ModelParams& p) {
  Json j = {{"model", to_string(kind)}, {"n", n}};
  switch (kind) {
    case ModelKind::Poly:
      j["d"] = p.d;
      j["C"] = p.C;
      break;
    case ModelKind::Stretched:
      j["c"] = p.c;
      j["alpha"] = p.alpha;
      break;
    case ModelKind::Log:
      j["c"] = p.c;
      break;
  }
  return j;
}

// Calibration grid and hidden profiles for F1.

std::vector<double> calibration_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 64; ++k) g.push_back(k / 4.0);
  return g;
}

FunctionSpec hidden_profile(std::size_t i, Rng& rng) {
  switch (i % 4) {
    case 0:
      return FunctionSpec::power(uniform(rng, 0.5, 3.0));
    case 1:
      return FunctionSpec::compose(FunctionSpec::affine(uniform(rng, 0.5, 5.0), 0.0),
                                   FunctionSpec::power(uniform(rng, 0.5, 3.0)));
    case 2: {
      std::vector<double> ts;
      while (ts.size() < 4) {
        const double t = std::round(uniform(rng, 0.5, 16.0) * 8) / 8;
        if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
      }
      std::sort(ts.begin(), ts.end());
      std::vector<std::pair<double, double>> knots{{0.0, 0.0}};
      double v = 0.0;
      for (double t : ts) knots.emplace_back(t, v += uniform(rng, 0.0, 3.0));
      return FunctionSpec::piecewise_linear(std::move(knots));
    }
    default: {
      const double a = uniform(rng, 0.5, 5.0);
      return FunctionSpec::compose(FunctionSpec::affine(a, -a),
                                   FunctionSpec::exp_scale(uniform(rng, 0.05, 0.3)));
    }
  }
}

DiscreteSpectrum on_grid_spectrum(Rng& rng, const std::vector<double>& grid) {
  const std::size_t n = uniform_index(rng, 1, 10);
  std::vector<DiscreteSpectrum::Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    atoms.push_back({grid[uniform_index(rng, 0, grid.size() - 1)],
                     std::uniform_int_distribution<std::uint64_t>(1, 4)(rng)});
  }
  return DiscreteSpectrum::canonical(std::move(atoms));
}

}  // namespace

F3Evaluator parse_f3_evaluator(const std::string& name) {
  if (name == "trace") return F3Evaluator::Trace;
  if (name == "power2") return F3Evaluator::Power2;
  if (name == "tail") return F3Evaluator::Tail;
  throw ParameterError("unknown F3 evaluator '" + name + "'");
}

const char* to_string(F3Evaluator e) {
  switch (e) {
    case F3Evaluator::Trace:
      return "trace";
    case F3Evaluator::Power2:
      return "power2";
    case F3Evaluator::Tail:
      return "tail";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (!(tol > 0) || !std::isfinite(tol)) throw ParameterError("tol must be > 0");
  if (grid_points < 2) throw ParameterError("grid_points must be >= 2");
}

Json RunConfig::to_json() const {
  return {{"seed", seed},
          {"instances", instances},
          {"tol", tol},
          {"profiles", profiles},
          {"pairs", pairs},
          {"grid_points", grid_points},
          {"sabotage", sabotage},
          {"inject_mixed_pair", inject_mixed_pair},
          {"f3_evaluator", speccalc::to_string(f3_evaluator)}};
}

Json Report::to_json() const {
  return {{"schema_version", schema_version},
          {"test_id", test_id},
          {"pass", pass},
          {"paper_anchor", paper_anchor},
          {"metrics", metrics},
          {"witnesses", witnesses},
          {"notes", notes},
          {"config", config}};
}

SameClassPair make_same_class_pair(ModelKind kind, Rng& rng, std::size_t grid_points) {
  SameClassPair p;
  p.kind = kind;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  switch (kind) {
    case ModelKind::Poly: {
      const double d = uniform(rng, 0.5, 3.0);
      p.first_params = {d, uniform(rng, 0.5, 2.0), 1.0, 0.5};
      p.second_params = {d, uniform(rng, 0.5, 2.0), 1.0, 0.5};
      n1 = n2 = 100000;
      break;
    }
    case ModelKind::Stretched: {
      const double alpha = uniform(rng, 0.3, 0.7);
      const double c1 = uniform(rng, 0.7, 1.4);
      const double c2 = uniform(rng, 0.7, 1.4);
      p.first_params = {1.0, 1.0, c1, alpha};
      p.second_params = {1.0, 1.0, c2, alpha};
      // Shared horizon L with n_i = floor(exp(c_i L^alpha)) - 1; la is L^alpha.
      auto sizes = [&](double la) {
        n1 = static_cast<std::uint64_t>(std::exp(c1 * la)) - 1;
        n2 = static_cast<std::uint64_t>(std::exp(c2 * la)) - 1;
      };
      sizes(std::log(1e5) / std::min(c1, c2));
      if (std::max(n1, n2) > 200000) sizes(std::log(2e5) / std::max(c1, c2));
      break;
    }
    case ModelKind::Log: {
      const double c1 = uniform(rng, 0.5, 2.0);
      const double c2 = uniform(rng, 0.5, 2.0);
      p.first_params = {1.0, 1.0, c1, 0.5};
      p.second_params = {1.0, 1.0, c2, 0.5};
      n1 = static_cast<std::uint64_t>(30 * c1);
      n2 = static_cast<std::uint64_t>(30 * c2);
      break;
    }
  }
  p.first = gen_model(kind, n1, p.first_params);
  p.second = gen_model(kind, n2, p.second_params);
  const double lo = std::max(p.first.min_positive_modulus(), p.second.min_positive_modulus());
  const double hi = std::min(p.first.max_modulus(), p.second.max_modulus());
  p.grid = log_grid(lo, hi, grid_points);
  return p;
}

Report run_f1(const RunConfig& config) {
  config.validate();
  Report r;
  r.test_id = "F1";
  r.paper_anchor = "trace-form-representation";
  r.config = config.to_json();
  r.pass = true;
  if (config.instances == 0 || config.profiles == 0) {
    r.notes.push_back("no instances");
    r.metrics = {{"profiles", 0}, {"spectra_checked", 0}};
    return r;
  }
  Rng rng = stream(config.seed, 1);
  const auto grid = calibration_grid();
  double max_rel = 0.0;
  double max_scaling = 0.0;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < config.profiles; ++i) {
    const FunctionSpec h0 = hidden_profile(i, rng);
    const double c0 = uniform(rng, 0.5, 4.0);
    const TraceFormEvaluator base(TraceProfile::from_spec(h0), c0);
    const LambdaEvaluator sabotaged("sabotaged", [&base](const DiscreteSpectrum& s) {
      const double k = static_cast<double>(s.size());
      return base.evaluate(s) + 0.5 * k * k;
    });
    const Evaluator& hidden = config.sabotage ? static_cast<const Evaluator&>(sabotaged) : base;

    std::optional<TraceFormEvaluator> calibrated;
    try {
      calibrated.emplace(calibrate_profile(hidden, grid), 1.0);
    } catch (const Error& e) {
      add_witness(r, {{"profile", function_to_json(h0)}, {"c", c0}, {"error", e.what()}});
      continue;
    }
    for (std::size_t k = 0; k < config.instances; ++k) {
      const auto s = on_grid_spectrum(rng, grid);
      const double want = hidden.evaluate(s);
      const double got = calibrated->evaluate(s);
      const double rel = relative_gap(want, got);
      max_rel = std::max(max_rel, rel);
      ++checked;
      if (!(rel <= config.tol)) {
        add_witness(r, {{"profile", function_to_json(h0)},
                        {"c", c0},
                        {"sabotaged", config.sabotage},
                        {"spectrum", spectrum_to_json(s)},
                        {"hidden", want},
                        {"calibrated", got},
                        {"rel_error", rel}});
      }
    }
    const auto h = TraceProfile::from_spec(h0);
    for (double a : {0.5, 1.0, 2.0, 10.0}) {
      const auto h2 = TraceProfile::from_spec(FunctionSpec::compose(FunctionSpec::affine(a, 0.0), h0));
      const auto res = check_scaling_uniqueness(h, c0, h2, c0 / a, grid, config.tol);
      if (const auto* sc = std::get_if<Scaling>(&res)) {
        const double err = relative_gap(sc->a, a);
        max_scaling = std::max(max_scaling, err);
        if (err <= config.tol) continue;
      }
      add_witness(r, {{"profile", function_to_json(h0)}, {"c", c0}, {"scale", a},
                      {"error", "scaling uniqueness did not recover a"}});
    }
  }
  r.metrics = {{"profiles", config.profiles},
               {"spectra_checked", checked},
               {"max_rel_error", max_rel},
               {"max_scaling_error", max_scaling}};
  return r;
}

Report run_f2(const RunConfig& config) {
  config.validate();
  Report r;
  r.test_id = "F2";
  r.paper_anchor = "growth-family-closure";
  r.config = config.to_json();
  r.pass = true;
  GrowthConfig gc;
  gc.grid_points = config.grid_points;
  Rng rng = stream(config.seed, 2);

  Json sums = Json::object();
  for (ModelKind kind : {ModelKind::Poly, ModelKind::Stretched, ModelKind::Log}) {
    std::size_t preserved = 0;
    for (std::size_t i = 0; i < config.pairs; ++i) {
      try {
        const auto p = make_same_class_pair(kind, rng, config.grid_points);
        const auto rep = sum_growth_check(p.first, p.second, p.grid, gc);
        const bool ok = rep.additive && rep.same_class && rep.preserved &&
                        class_name(rep.fit_first.verdict) == to_string(kind);
        if (ok) {
          ++preserved;
          continue;
        }
        add_witness(r, {{"section", "sum"},
                        {"first", params_json(kind, p.first.total_multiplicity(), p.first_params)},
                        {"second", params_json(kind, p.second.total_multiplicity(), p.second_params)},
                        {"additive", rep.additive},
                        {"fit_first", to_json(rep.fit_first)},
                        {"fit_second", to_json(rep.fit_second)},
                        {"fit_sum", to_json(rep.fit_sum)}});
      } catch (const Error& e) {
        add_witness(r, error_witness(std::string("sum/") + to_string(kind), e));
      }
    }
    sums[to_string(kind)] = {{"pairs", config.pairs}, {"preserved", preserved}};
  }
  r.metrics["sum"] = std::move(sums);

  try {
    const auto d = gen_model(ModelKind::Poly, 10000);
    const auto grid = log_grid(1.0, 1e4, 41);
    const auto t = tensor_growth_bound_check(d, d, 1.0, 1.0, 0.2, grid, 2.0);
    const auto small = gen_model(ModelKind::Poly, 10);
    const auto n10 = counting(tensor_product(small, small, 10.0), 10.0);
    r.metrics["tensor"] = {{"fitted_slope", t.fitted_slope},
                           {"bound", t.bound},
                           {"routes_agree", t.routes_agree},
                           {"count_at_10", n10}};
    if (!t.holds || n10 != 27) {
      add_witness(r, {{"section", "tensor"}, {"fitted_slope", t.fitted_slope},
                      {"routes_agree", t.routes_agree}, {"count_at_10", n10}});
    }
  } catch (const Error& e) {
    add_witness(r, error_witness("tensor", e));
  }

  struct Closure {
    ModelKind kind;
    std::uint64_t n;
    ModelParams params;
    double beta;
  };
  const std::vector<Closure> closures{
      {ModelKind::Poly, 100000, {}, 0.5},     {ModelKind::Poly, 100000, {}, 2.0},
      {ModelKind::Poly, 100000, {}, 3.0},     {ModelKind::Stretched, 100000, {}, 0.75},
      {ModelKind::Stretched, 100000, {}, 1.5}, {ModelKind::Log, 30, {}, 0.5},
      {ModelKind::Log, 30, {}, 2.0}};
  Json closure_metrics = Json::array();
  for (const auto& c : closures) {
    try {
      const auto rep = power_closure_check(gen_model(c.kind, c.n, c.params), c.beta, 0.05, gc);
      closure_metrics.push_back({{"model", to_string(c.kind)},
                                 {"beta", c.beta},
                                 {"after", to_json(rep.after.verdict)},
                                 {"expected", to_json(rep.expected)},
                                 {"parameter_error", rep.parameter_error}});
      if (!rep.holds) {
        add_witness(r, {{"section", "power_closure"},
                        {"input", params_json(c.kind, c.n, c.params)},
                        {"beta", c.beta},
                        {"before", to_json(rep.before)},
                        {"after", to_json(rep.after)},
                        {"expected", to_json(rep.expected)}});
      }
    } catch (const Error& e) {
      add_witness(r, error_witness(std::string("power_closure/") + to_string(c.kind), e));
    }
  }
  r.metrics["power_closure"] = std::move(closure_metrics);

  if (config.inject_mixed_pair) {
    r.notes.push_back("control: a poly and a stretched spectrum are claimed to share a class");
    try {
      const auto a = gen_model(ModelKind::Poly, 100000);
      const auto b = gen_model(ModelKind::Stretched, 100000);
      const double hi = std::min(a.max_modulus(), b.max_modulus());
      const double lo = std::max(a.min_positive_modulus(), b.min_positive_modulus());
      const auto rep = sum_growth_check(a, b, log_grid(lo, hi, config.grid_points), gc);
      if (!rep.same_class) {
        add_witness(r, {{"section", "mixed_pair"},
                        {"first", params_json(ModelKind::Poly, 100000, {})},
                        {"second", params_json(ModelKind::Stretched, 100000, {})},
                        {"fit_first", to_json(rep.fit_first)},
                        {"fit_second", to_json(rep.fit_second)}});
      }
    } catch (const Error& e) {
      add_witness(r, error_witness("mixed_pair", e));
    }
  }
  return r;
}

Report run_f3(const RunConfig& config) {
  config.validate();
  Report r;
  r.test_id = "F3";
  r.paper_anchor = "dominated-limits";
  r.config = config.to_json();
  r.pass = true;

  const auto control = dominated_continuity_violation_report(10);
  r.metrics["tail_control"] = {{"projection_values", control.projection_values},
                               {"identity_value", control.identity_value},
                               {"violated", control.violated}};
  if (!control.violated) {
    add_witness(r, {{"section", "tail_control"}, {"error", "control did not fail as predicted"}});
  }

  if (config.f3_evaluator == F3Evaluator::Tail) {
    const TailEvaluator tail;
    const auto id = EventuallyConstantDiagonal::identity();
    std::vector<double> gaps;
    for (std::size_t k = 1; k <= 10; ++k) {
      gaps.push_back(std::abs(tail.evaluate_diagonal(EventuallyConstantDiagonal::projection(k)) -
                              tail.evaluate_diagonal(id)));
    }
    r.metrics["gaps"] = gaps;
    if (gaps.back() != 0.0) {
      add_witness(r, {{"section", "limit"},
                      {"evaluator", tail.name()},
                      {"sequence", diagonal_to_json(EventuallyConstantDiagonal::projection(10))},
                      {"limit", diagonal_to_json(id)},
                      {"lhs", tail.evaluate_diagonal(EventuallyConstantDiagonal::projection(10))},
                      {"rhs", tail.evaluate_diagonal(id)}});
    }
    return r;
  }

  const FunctionSpec h =
      config.f3_evaluator == F3Evaluator::Trace ? FunctionSpec::identity() : FunctionSpec::power(2.0);
  const TraceFormEvaluator e(TraceProfile::from_spec(h), 1.0);
  const auto d = gen_model(ModelKind::Poly, 20);
  const double top = d.max_modulus();
  std::vector<double> schedule;
  for (double s = 1; s <= 1024; s *= 2) schedule.push_back(s);

  Json per_f = Json::array();
  for (const auto& f : {FunctionSpec::identity(), FunctionSpec::power(2.0)}) {
    const double limit = e.evaluate(apply_calculus(d, f));
    std::vector<double> gaps;
    bool monotone = true;
    bool saturates = true;
    for (int k = 1; k <= 25; ++k) {
      const auto fk = FunctionSpec::compose(f, FunctionSpec::truncate_band(k));
      const double gap = std::abs(e.evaluate(apply_calculus(d, fk)) - limit);
      if (!gaps.empty() && gap > gaps.back()) monotone = false;
      if (k >= top && gap != 0.0) saturates = false;
      gaps.push_back(gap);
    }
    const auto trace_side = cutoff_trace_limit(d, FunctionSpec::compose(h, f), schedule, config.tol);
    const bool agree = trace_side.converged() && relative_gap(e.c() * *trace_side.value, limit) <= config.tol;
    per_f.push_back({{"f", function_to_json(f)},
                     {"limit", limit},
                     {"gaps", gaps},
                     {"nonincreasing", monotone},
                     {"zero_from_max", saturates},
                     {"trace_side_agrees", agree}});
    if (!monotone || !saturates || !agree) {
      add_witness(r, {{"section", "limit"},
                      {"evaluator", e.name()},
                      {"spectrum", params_json(ModelKind::Poly, 20, {})},
                      {"f", function_to_json(f)},
                      {"gaps", gaps},
                      {"trace_side_agrees", agree}});
    }
  }
  r.metrics["sequences"] = std::move(per_f);
  return r;
}

Report run_f4(const RunConfig& config) {
  config.validate();
  Report r;
  r.test_id = "F4";
  r.paper_anchor = "interpolation-stability";
  r.config = config.to_json();
  r.pass = true;
  r.notes.push_back(
      "desk-scale rendering: atom multisets are separated by indicator and hat transforms; "
      "bounded-variation interpolants are not certified");

  std::vector<double> grid;
  for (int i = 1; i <= 12; ++i) grid.push_back(i / 2.0);
  std::vector<FunctionSpec> family;
  for (double g : grid) family.push_back(FunctionSpec::indicator(g, g));
  for (double g : grid) {
    family.push_back(FunctionSpec::piecewise_linear({{g - 0.5, 0.0}, {g, 1.0}, {g + 0.5, 0.0}}));
  }
  const TraceFormEvaluator e(TraceProfile::from_spec(FunctionSpec::identity()), 1.0);
  Rng rng = stream(config.seed, 4);
  auto random_list = [&] {
    std::vector<double> v(uniform_index(rng, 1, 8));
    for (double& x : v) x = grid[uniform_index(rng, 0, grid.size() - 1)];
    return v;
  };

  std::size_t separated = 0;
  Json examples = Json::array();
  for (std::size_t i = 0; i < config.instances; ++i) {
    const auto xs = random_list();
    std::vector<double> ys;
    switch (i % 3) {
      case 0:
        ys = xs;
        std::shuffle(ys.begin(), ys.end(), rng);
        break;
      case 1: {
        ys = xs;
        const std::size_t j = uniform_index(rng, 0, ys.size() - 1);
        const double old = ys[j];
        while (ys[j] == old) ys[j] = grid[uniform_index(rng, 0, grid.size() - 1)];
        break;
      }
      default:
        ys = random_list();
    }
    const auto x = DiscreteSpectrum::from_eigenvalues(xs);
    const auto y = DiscreteSpectrum::from_eigenvalues(ys);
    const FunctionSpec* separating = nullptr;
    for (const auto& f : family) {
      if (!values_agree(e.evaluate(apply_calculus(x, f)), e.evaluate(apply_calculus(y, f)),
                        config.tol)) {
        separating = &f;
        break;
      }
    }
    const bool equal = same_atoms(x, y);
    if (separating) {
      ++separated;
      if (examples.size() < 3) {
        examples.push_back({{"x", xs}, {"y", ys}, {"separating", function_to_json(*separating)}});
      }
    }
    if (equal == (separating != nullptr)) {
      add_witness(r, {{"x", xs}, {"y", ys}, {"equal_multisets", equal},
                      {"separated", separating != nullptr}});
    }
  }
  r.metrics = {{"pairs", config.instances}, {"separated", separated}, {"examples", examples}};
  return r;
}

bool SuiteResult::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
}

Json SuiteResult::to_json() const {
  Json reps = Json::array();
  for (const auto& r : reports) reps.push_back(r.to_json());
  return {{"schema_version", Report::schema_version}, {"pass", pass()}, {"reports", reps}};
}

SuiteResult run_all(const RunConfig& config) {
  return {{run_f1(config), run_f2(config), run_f3(config), run_f4(config)}};
}

}  // namespace speccalc
