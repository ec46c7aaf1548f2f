// speccalc: command-line front end for spectral calculus checks.
//
// Exit codes: 0 all checks pass, 1 a check fails, 2 configuration or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "speccalc/axioms.hpp"
#include "speccalc/counterexamples.hpp"
#include "speccalc/errors.hpp"
#include "speccalc/evaluator.hpp"
#include "speccalc/falsify.hpp"
#include "speccalc/growth.hpp"
#include "speccalc/io.hpp"
#include "speccalc/laplacian.hpp"
#include "speccalc/models.hpp"

namespace {

using speccalc::Json;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  double tol = 1e-9;
  std::size_t instances = 1000;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw speccalc::FormatError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return speccalc::parse_json(read_file(path)); }

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw speccalc::FormatError("cannot write '" + g.out + "'");
  out << text;
}

void emit(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

std::unique_ptr<speccalc::Evaluator> make_evaluator(const std::string& name) {
  if (name == "opnorm") return std::make_unique<speccalc::OpNormEvaluator>();
  if (name == "tail") return std::make_unique<speccalc::TailEvaluator>();
  if (name == "trace") {
    return std::make_unique<speccalc::TraceFormEvaluator>(
        speccalc::TraceProfile::from_spec(speccalc::FunctionSpec::identity()), 1.0);
  }
  auto p = speccalc::profile_from_json(read_json(name));
  return std::make_unique<speccalc::TraceFormEvaluator>(std::move(p.profile), p.c);
}

int run(int argc, char** argv) {
  CLI::App app{"Spectral calculus toolkit: evaluators, growth classes and falsification checks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--tol", g.tol, "Relative tolerance")->capture_default_str();
  app.add_option("--instances", g.instances, "Random instances per check")->capture_default_str();

  int status = 0;

  auto* classify = app.add_subcommand("classify", "Classify the growth of a counting function");
  std::string spectrum_path, samples_path;
  std::size_t grid_points = 80;
  classify->add_option("--spectrum", spectrum_path, "Spectrum JSON");
  classify->add_option("--samples", samples_path, "Counting samples CSV");
  classify->add_option("--grid-points", grid_points, "Log grid size for spectra")->capture_default_str();
  classify->callback([&] {
    speccalc::GrowthConfig cfg;
    cfg.grid_points = grid_points;
    if (spectrum_path.empty() == samples_path.empty()) {
      throw speccalc::ParameterError("classify needs exactly one of --spectrum or --samples");
    }
    const auto fit = samples_path.empty()
                         ? speccalc::classify_spectrum(speccalc::parse_spectrum(read_file(spectrum_path)), cfg)
                         : speccalc::classify_growth(speccalc::parse_samples(read_file(samples_path)), cfg);
    emit(g, speccalc::to_json(fit));
  });

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate c Tr h(X) for a profile and a spectrum");
  std::string profile_path;
  bool signed_parts = false;
  evaluate->add_option("--profile", profile_path, "Profile JSON")->required();
  evaluate->add_option("--spectrum", spectrum_path, "Spectrum JSON")->required();
  evaluate->add_flag("--signed", signed_parts, "Evaluate E(X+) - E(X-)");
  evaluate->callback([&] {
    auto p = speccalc::profile_from_json(read_json(profile_path));
    const speccalc::TraceFormEvaluator e(std::move(p.profile), p.c);
    const auto s = speccalc::parse_spectrum(read_file(spectrum_path));
    const double v = signed_parts ? speccalc::signed_evaluate(e, s) : e.evaluate(s);
    emit(g, Json{{"evaluator", e.name()}, {"value", v}});
  });

  auto* calibrate = app.add_subcommand("calibrate", "Recover the profile from rank-one evaluations");
  std::string evaluator_name = "trace";
  std::vector<double> grid;
  calibrate->add_option("--evaluator", evaluator_name, "trace, opnorm, or a profile JSON path")
      ->capture_default_str();
  calibrate->add_option("--grid", grid, "Positive increasing grid")->required();
  calibrate->callback([&] {
    const auto e = make_evaluator(evaluator_name);
    try {
      const auto h = speccalc::calibrate_profile(*e, grid);
      emit(g, speccalc::profile_to_json(h, 1.0));
    } catch (const speccalc::NonMonotoneEvaluator& err) {
      emit(g, Json{{"error", err.what()},
                   {"lambda_lo", err.lambda_lo},
                   {"lambda_hi", err.lambda_hi},
                   {"value_lo", err.value_lo},
                   {"value_hi", err.value_hi}});
      status = 1;
    }
  });

  auto* audit = app.add_subcommand("audit", "Check axioms A1-A5 on random instances");
  audit->add_option("--evaluator", evaluator_name, "trace, opnorm, tail, or a profile JSON path")
      ->capture_default_str();
  audit->callback([&] {
    const auto e = make_evaluator(evaluator_name);
    speccalc::AuditConfig cfg;
    cfg.seed = g.seed;
    cfg.tol = g.tol;
    cfg.instances = g.instances;
    const auto report = speccalc::audit_axioms(*e, cfg);
    emit(g, speccalc::to_json(report));
    if (!report.all_pass()) status = 1;
  });

  auto* tensor = app.add_subcommand("tensor", "Tensor-product counting bound");
  std::string first_path, second_path;
  double d1 = 1, d2 = 1, eps = 0.2, lambda_max = 1e4, fit_decades = 1;
  tensor->add_option("--first", first_path, "Spectrum JSON")->required();
  tensor->add_option("--second", second_path, "Spectrum JSON")->required();
  tensor->add_option("--d1", d1, "Growth exponent of the first factor")->capture_default_str();
  tensor->add_option("--d2", d2, "Growth exponent of the second factor")->capture_default_str();
  tensor->add_option("--eps", eps, "Slack on the slope bound d1 + d2")->capture_default_str();
  tensor->add_option("--lambda-max", lambda_max, "Largest grid point")->capture_default_str();
  tensor->add_option("--grid-points", grid_points, "Log grid size")->capture_default_str();
  tensor->add_option("--fit-decades", fit_decades, "Decades at the top of the grid used for the slope fit")->capture_default_str();
  tensor->callback([&] {
    const auto s1 = speccalc::parse_spectrum(read_file(first_path));
    const auto s2 = speccalc::parse_spectrum(read_file(second_path));
    const auto lg = speccalc::log_grid(1.0, lambda_max, grid_points);
    const auto r = speccalc::tensor_growth_bound_check(s1, s2, d1, d2, eps, lg, fit_decades);
    emit(g, Json{{"lambdas", r.lambdas},
                 {"enumerated", r.enumerated},
                 {"convolution", r.convolution},
                 {"routes_agree", r.routes_agree},
                 {"fitted_slope", r.fitted_slope},
                 {"bound", r.bound},
                 {"holds", r.holds}});
    if (!r.holds) status = 1;
  });

  auto* counter = app.add_subcommand("counterexample", "Axiom independence counterexamples");
  counter->require_subcommand(1);
  auto* locality = counter->add_subcommand("locality", "Operator norm splits c I_N into N blocks");
  std::uint64_t blocks = 2;
  double scale = 1.0;
  locality->add_option("--n", blocks, "Number of rank-one blocks")->capture_default_str();
  locality->add_option("--c", scale, "Scale of the identity")->capture_default_str();
  locality->callback([&] {
    speccalc::AuditConfig cfg;
    cfg.seed = g.seed;
    const auto r = speccalc::locality_violation_report(blocks, scale, cfg);
    Json asserted = Json::array(), extra = Json::array();
    for (auto a : r.paper_asserted) asserted.push_back(speccalc::axiom_id(a));
    for (auto a : r.additional) extra.push_back(speccalc::axiom_id(a));
    emit(g, Json{{"paper_anchor", "operator-norm-locality"},
                 {"n", r.n},
                 {"c", r.c},
                 {"lhs", r.lhs},
                 {"rhs", r.rhs},
                 {"verdict", r.verdict},
                 {"paper_asserted_violations", asserted},
                 {"additional_violations", extra},
                 {"audit", speccalc::to_json(r.audit)}});
  });
  auto* dominated = counter->add_subcommand("dominated", "Tail limit along P_k increasing to I");
  std::size_t k_max = 10;
  dominated->add_option("--k-max", k_max, "Length of the projection sequence")->capture_default_str();
  dominated->callback([&] {
    speccalc::AuditConfig cfg;
    cfg.seed = g.seed;
    const auto r = speccalc::dominated_continuity_violation_report(k_max, cfg);
    emit(g, Json{{"paper_anchor", "dropping-dominated-continuity"},
                 {"k_max", r.k_max},
                 {"projection_values", r.projection_values},
                 {"gaps", r.gaps},
                 {"identity_value", r.identity_value},
                 {"verdict", r.verdict},
                 {"control_violated", r.control_violated},
                 {"audit", speccalc::to_json(r.audit)}});
  });

  auto* falsify = app.add_subcommand("falsify", "Run falsification tests f1, f2, f3, f4 or all");
  std::string which;
  speccalc::RunConfig rc;
  std::string f3_name = "trace";
  falsify->add_option("test", which, "f1, f2, f3, f4 or all")
      ->required()
      ->check(CLI::IsMember({"f1", "f2", "f3", "f4", "all"}));
  falsify->add_option("--profiles", rc.profiles, "F1 hidden profiles")->capture_default_str();
  falsify->add_option("--pairs", rc.pairs, "F2 same-class pairs per class")->capture_default_str();
  falsify->add_option("--grid-points", rc.grid_points, "F2 log grid size")->capture_default_str();
  falsify->add_flag("--sabotage", rc.sabotage, "F1 control: perturbed hidden evaluator");
  falsify->add_flag("--inject-mixed-pair", rc.inject_mixed_pair, "F2 control: mixed-class pair");
  falsify->add_option("--f3-evaluator", f3_name, "trace, power2 or tail")->capture_default_str();
  falsify->callback([&] {
    rc.seed = g.seed;
    rc.tol = g.tol;
    rc.instances = g.instances;
    rc.f3_evaluator = speccalc::parse_f3_evaluator(f3_name);
    rc.validate();
    if (which == "all") {
      const auto suite = speccalc::run_all(rc);
      emit(g, suite.to_json());
      if (!suite.pass()) status = 1;
      return;
    }
    const auto report = which == "f1"   ? speccalc::run_f1(rc)
                        : which == "f2" ? speccalc::run_f2(rc)
                        : which == "f3" ? speccalc::run_f3(rc)
                                        : speccalc::run_f4(rc);
    emit(g, report.to_json());
    if (!report.pass) status = 1;
  });

  auto* generate = app.add_subcommand("generate", "Write a model spectrum");
  std::string model = "poly";
  std::uint64_t n = 100;
  speccalc::ModelParams params;
  generate->add_option("--model", model, "poly, stretched or log")->capture_default_str();
  generate->add_option("--n", n, "Number of eigenvalues")->capture_default_str();
  generate->add_option("--d", params.d, "Poly exponent")->capture_default_str();
  generate->add_option("--C", params.C, "Poly constant")->capture_default_str();
  generate->add_option("--c", params.c, "Stretched or log constant")->capture_default_str();
  generate->add_option("--alpha", params.alpha, "Stretched exponent")->capture_default_str();
  generate->callback([&] {
    emit(g, speccalc::write_spectrum(speccalc::gen_model(speccalc::parse_model_kind(model), n, params)));
  });

  auto* laplacian = app.add_subcommand("laplacian", "Spectrum of a graph Laplacian");
  std::string graph_path;
  laplacian->add_option("--graph", graph_path, "Adjacency JSON")->required();
  laplacian->callback([&] {
    const auto a = speccalc::adjacency_from_json(read_json(graph_path));
    emit(g, speccalc::write_spectrum(speccalc::graph_laplacian_spectrum(a)));
  });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : counter->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const speccalc::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const speccalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
