#include "speccalc/io.hpp"

#include <cmath>
#include <sstream>

#include "speccalc/errors.hpp"
#include "speccalc/numeric.hpp"

namespace speccalc {

namespace {

const Json& field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) throw FormatError(ctx + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(ctx + ": missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const std::string& ctx) {
  if (!j.is_number()) throw FormatError(ctx + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw FormatError(ctx + ": expected a finite number");
  return v;
}

double number_field(const Json& j, const char* key, const std::string& ctx) {
  return number(field(j, key, ctx), ctx + "." + key);
}

std::uint64_t count(const Json& j, const std::string& ctx) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0 && std::floor(v) == v && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  throw FormatError(ctx + ": expected a nonnegative integer");
}

std::vector<std::pair<double, double>> pairs(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw FormatError(ctx + ": expected an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = ctx + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw FormatError(at + ": expected a pair");
    out.emplace_back(number(j[i][0], at + "[0]"), number(j[i][1], at + "[1]"));
  }
  return out;
}

Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

template <typename Fn>
auto rethrow_as_format(const std::string& ctx, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(ctx + ": " + e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

DiscreteSpectrum spectrum_from_json(const Json& j) {
  const Json& atoms = field(j, "atoms", "spectrum");
  if (!atoms.is_array()) throw FormatError("spectrum.atoms: expected an array");
  std::vector<DiscreteSpectrum::Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string at = "spectrum.atoms[" + std::to_string(i) + "]";
    if (!atoms[i].is_array() || atoms[i].size() != 2) {
      throw FormatError(at + ": expected [lambda, multiplicity]");
    }
    const double v = number(atoms[i][0], at + "[0]");
    const std::uint64_t m = count(atoms[i][1], at + "[1]");
    if (m == 0) throw FormatError(at + ": multiplicity must be >= 1");
    if (!out.empty() && !(out.back().value < v)) {
      throw FormatError(at + ": eigenvalues must be strictly increasing");
    }
    out.push_back({v, m});
  }
  std::optional<std::uint64_t> rank;
  if (const auto it = j.find("truncation_rank"); it != j.end() && !it->is_null()) {
    rank = count(*it, "spectrum.truncation_rank");
  }
  std::string label;
  if (const auto it = j.find("source_label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw FormatError("spectrum.source_label: expected a string");
    label = it->get<std::string>();
  }
  return rethrow_as_format("spectrum", [&] {
    return DiscreteSpectrum(std::move(out), rank, std::move(label));
  });
}

Json spectrum_to_json(const DiscreteSpectrum& s) {
  Json atoms = Json::array();
  for (const auto& a : s.atoms()) atoms.push_back(Json::array({a.value, a.multiplicity}));
  Json j;
  j["atoms"] = std::move(atoms);
  j["truncation_rank"] = s.truncation_rank() ? Json(*s.truncation_rank()) : Json(nullptr);
  j["source_label"] = s.source_label();
  return j;
}

DiscreteSpectrum parse_spectrum(std::string_view text) { return spectrum_from_json(parse_json(text)); }

std::string write_spectrum(const DiscreteSpectrum& s) { return spectrum_to_json(s).dump() + "\n"; }

FunctionSpec function_from_json(const Json& j) {
  const Json& kind_j = field(j, "kind", "function");
  if (!kind_j.is_string()) throw FormatError("function.kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  const std::string ctx = "function(" + kind + ")";
  return rethrow_as_format(ctx, [&] {
    if (kind == "identity") return FunctionSpec::identity();
    if (kind == "affine") return FunctionSpec::affine(number_field(j, "a", ctx), number_field(j, "b", ctx));
    if (kind == "power") return FunctionSpec::power(number_field(j, "beta", ctx));
    if (kind == "exp_scale") return FunctionSpec::exp_scale(number_field(j, "c", ctx));
    if (kind == "log_pos") return FunctionSpec::log_pos();
    if (kind == "indicator") {
      return FunctionSpec::indicator(number_field(j, "lo", ctx), number_field(j, "hi", ctx));
    }
    if (kind == "cutoff_ramp") return FunctionSpec::cutoff_ramp(number_field(j, "cutoff", ctx));
    if (kind == "piecewise_linear") {
      return FunctionSpec::piecewise_linear(pairs(field(j, "knots", ctx), ctx + ".knots"));
    }
    if (kind == "compose") {
      return FunctionSpec::compose(function_from_json(field(j, "outer", ctx)),
                                   function_from_json(field(j, "inner", ctx)));
    }
    if (kind == "truncate_band") return FunctionSpec::truncate_band(number_field(j, "k", ctx));
    throw FormatError("function.kind: unknown kind '" + kind + "'");
  });
}

Json function_to_json(const FunctionSpec& f) {
  struct Visitor {
    Json operator()(const FunctionSpec::Identity&) const { return {{"kind", "identity"}}; }
    Json operator()(const FunctionSpec::Affine& n) const {
      return {{"kind", "affine"}, {"a", n.a}, {"b", n.b}};
    }
    Json operator()(const FunctionSpec::Power& n) const { return {{"kind", "power"}, {"beta", n.beta}}; }
    Json operator()(const FunctionSpec::ExpScale& n) const { return {{"kind", "exp_scale"}, {"c", n.c}}; }
    Json operator()(const FunctionSpec::LogPos&) const { return {{"kind", "log_pos"}}; }
    Json operator()(const FunctionSpec::Indicator& n) const {
      return {{"kind", "indicator"}, {"lo", n.lo}, {"hi", n.hi}};
    }
    Json operator()(const FunctionSpec::CutoffRamp& n) const {
      return {{"kind", "cutoff_ramp"}, {"cutoff", n.cutoff}};
    }
    Json operator()(const FunctionSpec::PiecewiseLinear& n) const {
      Json knots = Json::array();
      for (const auto& [t, v] : n.knots) knots.push_back(Json::array({t, v}));
      return {{"kind", "piecewise_linear"}, {"knots", std::move(knots)}};
    }
    Json operator()(const FunctionSpec::Compose& n) const {
      return {{"kind", "compose"}, {"outer", function_to_json(*n.outer)},
              {"inner", function_to_json(*n.inner)}};
    }
    Json operator()(const FunctionSpec::TruncateBand& n) const {
      return {{"kind", "truncate_band"}, {"k", n.k}};
    }
  };
  return std::visit(Visitor{}, f.node());
}

ProfileInput profile_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("profile: expected an object");
  double c = 1.0;
  if (j.contains("c")) c = number_field(j, "c", "profile");
  if (!(c > 0)) throw FormatError("profile.c: must be > 0");
  if (j.contains("table")) {
    auto knots = pairs(j["table"], "profile.table");
    return rethrow_as_format("profile.table", [&] {
      return ProfileInput{TraceProfile::from_table(MonotoneTable(std::move(knots))), c};
    });
  }
  const FunctionSpec f = function_from_json(j);
  return rethrow_as_format("profile", [&] { return ProfileInput{TraceProfile::from_spec(f), c}; });
}

Json profile_to_json(const TraceProfile& h, double c) {
  Json j;
  if (const auto* t = h.table()) {
    Json knots = Json::array();
    for (const auto& [x, v] : t->knots()) knots.push_back(Json::array({x, v}));
    j["table"] = std::move(knots);
  } else {
    j = function_to_json(*h.spec());
  }
  j["c"] = c;
  return j;
}

EventuallyConstantDiagonal diagonal_from_json(const Json& j) {
  const Json& p = field(j, "prefix", "diagonal");
  if (!p.is_array()) throw FormatError("diagonal.prefix: expected an array");
  std::vector<double> prefix;
  for (std::size_t i = 0; i < p.size(); ++i) {
    prefix.push_back(number(p[i], "diagonal.prefix[" + std::to_string(i) + "]"));
  }
  return {std::move(prefix), number_field(j, "tail", "diagonal")};
}

Json diagonal_to_json(const EventuallyConstantDiagonal& x) {
  return {{"prefix", x.prefix()}, {"tail", x.tail()}};
}

AdjacencyMatrix adjacency_from_json(const Json& j) {
  const std::uint64_t n = count(field(j, "n", "adjacency"), "adjacency.n");
  if (n == 0 || n > 2000) throw FormatError("adjacency.n: must lie in [1, 2000]");
  const Json& e = field(j, "edges", "adjacency");
  if (!e.is_array()) throw FormatError("adjacency.edges: expected an array");
  std::vector<std::tuple<int, int, double>> edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string at = "adjacency.edges[" + std::to_string(i) + "]";
    if (!e[i].is_array() || e[i].size() < 2 || e[i].size() > 3) {
      throw FormatError(at + ": expected [i, j] or [i, j, w]");
    }
    const auto a = count(e[i][0], at + "[0]");
    const auto b = count(e[i][1], at + "[1]");
    if (a >= n || b >= n) throw FormatError(at + ": vertex out of range");
    const double w = e[i].size() == 3 ? number(e[i][2], at + "[2]") : 1.0;
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b), w);
  }
  return rethrow_as_format("adjacency", [&] {
    return AdjacencyMatrix::from_edges(static_cast<int>(n), edges);
  });
}

CountingSamples parse_samples(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || (line != "lambda,count" && line != "lambda,count\r")) {
    throw FormatError("samples line 1: expected header 'lambda,count'");
  }
  CountingSamples out;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string at = "samples line " + std::to_string(lineno);
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError(at + ": expected 'lambda,count'");
    const std::string lhs = line.substr(0, comma);
    const std::string rhs = line.substr(comma + 1);
    std::size_t used = 0;
    double lambda = 0;
    unsigned long long n = 0;
    try {
      lambda = std::stod(lhs, &used);
      if (used != lhs.size()) throw std::invalid_argument("trailing");
      if (rhs.empty() || rhs.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("count");
      }
      n = std::stoull(rhs);
    } catch (const std::exception&) {
      throw FormatError(at + ": malformed value");
    }
    out.points.push_back({lambda, n});
  }
  rethrow_as_format("samples", [&] {
    out.validate();
    return 0;
  });
  return out;
}

std::string write_samples(const CountingSamples& samples) {
  std::string out = "lambda,count\n";
  for (const auto& p : samples.points) {
    out += format_double(p.lambda) + "," + std::to_string(p.count) + "\n";
  }
  return out;
}

Json to_json(const GrowthClass& g) {
  struct Visitor {
    Json operator()(const growth::Poly& p) const { return {{"class", "poly"}, {"d", p.d}, {"C", p.C}}; }
    Json operator()(const growth::Stretched& s) const {
      return {{"class", "stretched"}, {"c", s.c}, {"alpha", s.alpha}};
    }
    Json operator()(const growth::Log& l) const { return {{"class", "log"}, {"c", l.c}}; }
    Json operator()(const growth::Slower&) const { return {{"class", "slower"}}; }
    Json operator()(const growth::Unclassified& u) const {
      return {{"class", "unclassified"}, {"reason", u.reason}};
    }
  };
  return std::visit(Visitor{}, g);
}

Json to_json(const GrowthFit& fit) {
  Json models = Json::array();
  for (const auto& m : fit.models) {
    models.push_back({{"model", m.model},
                      {"slope", num(m.slope)},
                      {"intercept", num(m.intercept)},
                      {"slope_stderr", num(m.slope_stderr)},
                      {"residual", num(m.residual)},
                      {"points", m.points}});
  }
  return {{"verdict", to_json(fit.verdict)},
          {"models", std::move(models)},
          {"window", Json::array({num(fit.window_lo), num(fit.window_hi)})},
          {"r2_gap", num(fit.r2_gap)}};
}

Json to_json(const Operand& op) {
  if (const auto* s = std::get_if<DiscreteSpectrum>(&op)) return spectrum_to_json(*s);
  return diagonal_to_json(std::get<EventuallyConstantDiagonal>(op));
}

Json to_json(const Witness& w) {
  Json ops = Json::array();
  for (const auto& op : w.operands) ops.push_back(to_json(op));
  return {{"description", w.description}, {"operands", std::move(ops)},
          {"lhs", num(w.lhs)}, {"rhs", num(w.rhs)}};
}

Json to_json(const AxiomReport& report) {
  Json axioms = Json::array();
  for (const auto& r : report.records) {
    Json a = {{"axiom", axiom_id(r.axiom)},
              {"name", axiom_name(r.axiom)},
              {"verdict", to_string(r.verdict)},
              {"instances", r.instances},
              {"max_deviation", num(r.max_deviation)}};
    if (r.witness) a["witness"] = to_json(*r.witness);
    if (!r.note.empty()) a["note"] = r.note;
    axioms.push_back(std::move(a));
  }
  return {{"evaluator", report.evaluator}, {"domain", to_string(report.domain)},
          {"axioms", std::move(axioms)}};
}

}  // namespace speccalc
