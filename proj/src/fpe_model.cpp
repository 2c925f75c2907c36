#include "lrps/fpe_model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lrps/error.hpp"
#include "lrps/expr_parser.hpp"

namespace lrps {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  if (!obj.is_object()) schema(where + " must be an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!obj.contains(k)) schema(where + ": missing field '" + k + "'");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) schema(where + ": unknown field '" + item.key() + "'");
}

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      schema(where + ": " + e.detail());
    }
  }
  schema(where + " must be an integer or a rational string such as \"4/5\"");
}

int int_field(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema(where + " must be an integer");
  return v.get<int>();
}

Expr expr_field(const json& v, const std::string& where, int dimension) {
  if (v.is_number_integer()) return Expr::constant(v.get<long>());
  if (!v.is_string()) schema(where + " must be an expression string");
  try {
    return parse_expr(v.get<std::string>(), dimension);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DimensionError) throw Error(ErrorKind::DimensionError, where + ": " + e.detail());
    schema(where + ": " + e.detail());
  }
}

int index_field(const json& v, const std::string& where, int dimension) {
  const int i = int_field(v, where);
  if (i < 1 || i > dimension)
    throw Error(ErrorKind::DimensionError,
                where + " = " + std::to_string(i) + " outside 1.." + std::to_string(dimension));
  return i - 1;
}

FluxTerm flux_from(const json& entry, const std::string& where, int dimension) {
  FluxTerm f;
  if (entry.contains("linear")) f.linear = expr_field(entry["linear"], where + ".linear", dimension);
  if (entry.contains("quadratic")) f.quadratic = expr_field(entry["quadratic"], where + ".quadratic", dimension);
  if (!entry.contains("linear") && !entry.contains("quadratic"))
    schema(where + ": needs 'linear' and/or 'quadratic'");
  return f;
}

FpeProblem blank(int dimension) {
  FpeProblem p;
  p.dimension = dimension;
  p.drift.assign(dimension, FluxTerm{});
  p.diffusion.assign(dimension, std::vector<FluxTerm>(dimension));
  return p;
}

Expr z(int i) { return Expr::variable(i); }
Expr c(long n, long d = 1) { return Expr::constant(ratio(n, d)); }

FpeProblem make_builtin(std::string_view id, const Rational& gamma, int order) {
  const auto all_mixed_unit = [](FpeProblem& p) {
    for (int i = 0; i < p.dimension; ++i)
      for (int j = 0; j < p.dimension; ++j) p.diffusion[i][j].linear = c(1);
  };
  FpeProblem p;
  if (id == "1") {
    p = blank(1);
    p.drift[0].linear = c(-1);
    p.diffusion[0][0].linear = c(1);
    p.initial = z(0);
    p.exact = ExactSolution{ExactKind::AffinePlusPower, z(0)};
  } else if (id == "2") {
    p = blank(1);
    p.drift[0].linear = z(0);
    p.diffusion[0][0].linear = c(1, 2) * z(0) * z(0);
    p.initial = z(0);
    p.exact = ExactSolution{ExactKind::CTimesMlPlus, z(0)};
  } else if (id == "4") {
    p = blank(1);
    p.drift[0].linear = c(-1, 2) * z(0);
    p.drift[0].quadratic = c(3);
    p.diffusion[0][0].quadratic = z(0);
    p.initial = z(0);
    p.exact = ExactSolution{ExactKind::CTimesMlPlus, z(0)};
  } else if (id == "5") {
    p = blank(2);
    p.drift[0].linear = z(0);
    p.drift[1].linear = c(5) * z(1);
    p.diffusion[0][0].linear = z(0) * z(0);
    p.diffusion[0][1].linear = c(1);
    p.diffusion[1][0].linear = c(1);
    p.diffusion[1][1].linear = z(1) * z(1);
    p.initial = z(0);
    p.exact = ExactSolution{ExactKind::CTimesMlPlus, z(0)};
  } else if (id == "6") {
    p = blank(2);
    p.drift[0].quadratic = c(4) * Expr::affine_power(0, 0, -1);
    p.drift[1].linear = z(1);
    p.diffusion[0][0].quadratic = c(1);
    p.diffusion[0][1].linear = c(1);
    p.diffusion[1][0].linear = c(1);
    p.diffusion[1][1].linear = c(1);
    p.initial = z(0) * z(0);
    p.exact = ExactSolution{ExactKind::CTimesMlMinus, z(0) * z(0)};
  } else if (id == "7") {
    p = blank(3);
    for (int i = 0; i < 3; ++i) p.drift[i].linear = c(2) * z(i);
    all_mixed_unit(p);
    p.diffusion[0][0].linear = z(0);
    p.diffusion[2][2].linear = c(3, 2) * z(2) * z(2);
    p.initial = z(2);
    p.exact = ExactSolution{ExactKind::CTimesMlPlus, z(2)};
  } else if (id == "8") {
    p = blank(3);
    p.drift[0].linear = -z(0);
    p.drift[1].quadratic = c(1);
    p.drift[2].linear = c(2) * Expr::affine_power(2, -1, -1);
    all_mixed_unit(p);
    p.diffusion[0][0] = FluxTerm{Expr{}, c(1)};
    p.diffusion[1][1] = FluxTerm{Expr{}, c(1)};
    p.initial = Expr::affine_power(2, -1, 2);
    p.exact = ExactSolution{ExactKind::CTimesMlPlus, p.initial};
  } else if (id == "s6a") {
    p = blank(1);
    p.drift[0].linear = c(-1, 2) * z(0);
    p.diffusion[0][0].linear = c(1);
    p.initial = z(0) + c(2);
    for (int m = 0; m <= order; ++m)
      p.control.push_back({Expr::gamma_token(Rational(m) * gamma + 1, -1), FracExponent{m, 0}});
    p.exact = ExactSolution{ExactKind::MlShifted, z(0) + c(2)};
  } else if (id == "s6b") {
    p = blank(1);
    const Expr w = Expr::exp_of(Expr::affine_power(0, Rational(-1, 2), 2));
    const Expr sin_pz = Expr::trig(TrigKind::Sin, 0, 1, true, 0);
    const Expr cos_pz = Expr::trig(TrigKind::Cos, 0, 1, true, 0);
    p.drift[0].linear = -w;
    p.diffusion[0][0].linear = c(1);
    p.initial = Expr{};
    p.control.push_back({c(2) * Expr::gamma_token(3 - gamma, -1) * sin_pz, FracExponent{-1, 2}});
    p.control.push_back({Expr::pi(2) * sin_pz - w * (c(2) * Expr::affine_power(0, Rational(-1, 2), 1) * sin_pz +
                                                      Expr::pi() * cos_pz),
                         FracExponent{0, 2}});
  } else {
    throw Error(ErrorKind::UnknownExample, "no built-in example '" + std::string(id) + "'");
  }
  p.builtin_id = std::string(id);
  for (const auto& info : example_catalog())
    if (info.id == id) p.name = info.description;
  p.gamma = gamma;
  p.order = order;
  return p;
}

}  // namespace

bool FpeProblem::is_linear() const {
  for (const auto& f : drift)
    if (!f.quadratic.empty()) return false;
  for (const auto& row : diffusion)
    for (const auto& f : row)
      if (!f.quadratic.empty()) return false;
  return true;
}

bool operator==(const FpeProblem& a, const FpeProblem& b) {
  if (a.dimension != b.dimension || a.gamma != b.gamma || a.order != b.order || a.initial != b.initial) return false;
  for (int i = 0; i < a.dimension; ++i) {
    if (a.drift[i].linear != b.drift[i].linear || a.drift[i].quadratic != b.drift[i].quadratic) return false;
    for (int j = 0; j < a.dimension; ++j)
      if (a.diffusion[i][j].linear != b.diffusion[i][j].linear ||
          a.diffusion[i][j].quadratic != b.diffusion[i][j].quadratic)
        return false;
  }
  if (a.control.size() != b.control.size()) return false;
  for (std::size_t m = 0; m < a.control.size(); ++m)
    if (a.control[m].coeff != b.control[m].coeff ||
        a.control[m].exponent.value(a.gamma) != b.control[m].exponent.value(b.gamma))
      return false;
  if (a.exact.has_value() != b.exact.has_value()) return false;
  if (a.exact && (a.exact->kind != b.exact->kind || a.exact->c != b.exact->c)) return false;
  return true;
}

void validate_gamma(const Rational& gamma) {
  if (gamma <= 0 || gamma > 1)
    throw Error(ErrorKind::GammaRangeError, "fractional order " + to_string(gamma) + " is outside (0, 1]");
}

FpeProblem parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  check_keys(doc, "problem", {"dimension", "gamma", "initial", "drift", "diffusion"},
             {"name", "order", "control", "exact"});
  const int d = int_field(doc["dimension"], "dimension");
  if (d < 1 || d > kMaxDimension) throw Error(ErrorKind::DimensionError, "dimension must be 1, 2 or 3");
  FpeProblem p = blank(d);
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema("name must be a string");
    p.name = doc["name"].get<std::string>();
  }
  p.gamma = rational_field(doc["gamma"], "gamma");
  validate_gamma(p.gamma);
  if (doc.contains("order")) p.order = int_field(doc["order"], "order");
  if (p.order < 1) schema("order must be at least 1");
  p.initial = expr_field(doc["initial"], "initial", d);

  if (!doc["drift"].is_array()) schema("drift must be an array");
  std::set<int> seen_drift;
  for (std::size_t n = 0; n < doc["drift"].size(); ++n) {
    const json& e = doc["drift"][n];
    const std::string where = "drift[" + std::to_string(n) + "]";
    check_keys(e, where, {"i"}, {"linear", "quadratic"});
    const int i = index_field(e["i"], where + ".i", d);
    if (!seen_drift.insert(i).second) schema(where + ": duplicate i");
    p.drift[i] = flux_from(e, where, d);
  }
  if (!doc["diffusion"].is_array()) schema("diffusion must be an array");
  std::set<std::pair<int, int>> seen_diff;
  for (std::size_t n = 0; n < doc["diffusion"].size(); ++n) {
    const json& e = doc["diffusion"][n];
    const std::string where = "diffusion[" + std::to_string(n) + "]";
    check_keys(e, where, {"i", "j"}, {"linear", "quadratic"});
    const int i = index_field(e["i"], where + ".i", d);
    const int j = index_field(e["j"], where + ".j", d);
    if (!seen_diff.insert({i, j}).second) schema(where + ": duplicate (i, j)");
    p.diffusion[i][j] = flux_from(e, where, d);
  }
  if (doc.contains("control")) {
    if (!doc["control"].is_array()) schema("control must be an array");
    std::set<Rational> seen;
    for (std::size_t n = 0; n < doc["control"].size(); ++n) {
      const json& e = doc["control"][n];
      const std::string where = "control[" + std::to_string(n) + "]";
      check_keys(e, where, {"coeff", "a", "b"}, {});
      ControlEntry ce{expr_field(e["coeff"], where + ".coeff", d),
                      FracExponent{rational_field(e["a"], where + ".a"), rational_field(e["b"], where + ".b")}};
      const Rational v = ce.exponent.value(p.gamma);
      if (v < 0) schema(where + ": exponent a*gamma + b must be nonnegative");
      if (!seen.insert(v).second) schema(where + ": duplicate exponent value " + to_string(v));
      p.control.push_back(std::move(ce));
    }
  }
  if (doc.contains("exact")) {
    const json& e = doc["exact"];
    check_keys(e, "exact", {"kind", "c"}, {});
    if (!e["kind"].is_string()) schema("exact.kind must be a string");
    p.exact = ExactSolution{parse_exact_kind(e["kind"].get<std::string>()), expr_field(e["c"], "exact.c", d)};
  }
  return p;
}

FpeProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open problem file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string serialize_problem(const FpeProblem& p) {
  ordered_json doc;
  if (!p.name.empty()) doc["name"] = p.name;
  doc["dimension"] = p.dimension;
  doc["gamma"] = to_string(p.gamma);
  doc["order"] = p.order;
  doc["initial"] = to_string(p.initial);
  doc["drift"] = ordered_json::array();
  for (int i = 0; i < p.dimension; ++i) {
    const FluxTerm& f = p.drift[i];
    if (f.absent()) continue;
    ordered_json e{{"i", i + 1}};
    if (!f.linear.empty()) e["linear"] = to_string(f.linear);
    if (!f.quadratic.empty()) e["quadratic"] = to_string(f.quadratic);
    doc["drift"].push_back(e);
  }
  doc["diffusion"] = ordered_json::array();
  for (int i = 0; i < p.dimension; ++i)
    for (int j = 0; j < p.dimension; ++j) {
      const FluxTerm& f = p.diffusion[i][j];
      if (f.absent()) continue;
      ordered_json e{{"i", i + 1}, {"j", j + 1}};
      if (!f.linear.empty()) e["linear"] = to_string(f.linear);
      if (!f.quadratic.empty()) e["quadratic"] = to_string(f.quadratic);
      doc["diffusion"].push_back(e);
    }
  if (!p.control.empty()) {
    doc["control"] = ordered_json::array();
    for (const auto& ce : p.control)
      doc["control"].push_back(
          {{"coeff", to_string(ce.coeff)}, {"a", to_string(ce.exponent.a)}, {"b", to_string(ce.exponent.b)}});
  }
  if (p.exact) doc["exact"] = {{"kind", std::string(to_string(p.exact->kind))}, {"c", to_string(p.exact->c)}};
  return doc.dump(2) + "\n";
}

const std::vector<ExampleInfo>& example_catalog() {
  static const std::vector<ExampleInfo> catalog = {
      {"1", 1, "linear 1-d, drift -1, diffusion 1, nu0 = z1; exact z1 + tau^g/Gamma(g+1)"},
      {"2", 1, "linear 1-d, drift z1, diffusion z1^2/2, nu0 = z1; exact z1 E_g(tau^g)"},
      {"4", 1, "nonlinear 1-d, drift 3 nu^2 - z1 nu/2, diffusion z1 nu^2, nu0 = z1; exact z1 E_g(tau^g)"},
      {"5", 2, "linear 2-d, drifts z1, 5 z2, diffusions z1^2, 1, 1, z2^2, nu0 = z1; exact z1 E_g(tau^g)"},
      {"6", 2, "nonlinear 2-d, drift 4/z1 nu^2 and z2 nu, diffusion nu^2 and unit mixed terms, nu0 = z1^2; "
               "exact z1^2 E_g(-tau^g)"},
      {"7", 3, "linear 3-d, drifts 2 z_i, unit mixed diffusion, d11 = z1, d33 = 3/2 z3^2, nu0 = z3; "
               "exact z3 E_g(tau^g)"},
      {"8", 3, "nonlinear 3-d, drifts -z1, nu^2, 2/(z3-1), diffusion nu^2 on d11 and d22, unit elsewhere, "
               "nu0 = (z3-1)^2; exact (z3-1)^2 E_g(tau^g)"},
      {"s6a", 1, "1-d with control E_g(tau^g), drift -z1/2, diffusion 1, nu0 = z1 + 2; exact (z1+2) E_g(tau^g)"},
      {"s6b", 1, "1-d with control built from tau^2 sin(pi z1), drift -exp((z1-1/2)^2), nu0 = 0; "
                 "solvable only when 2/gamma is an integer"},
  };
  return catalog;
}

FpeProblem builtin_example(std::string_view id, const Rational& gamma, int order) {
  validate_gamma(gamma);
  if (order < 1) throw Error(ErrorKind::SchemaError, "order must be at least 1");
  return make_builtin(id, gamma, order);
}

FpeProblem with_gamma(const FpeProblem& problem, const Rational& gamma) {
  validate_gamma(gamma);
  if (!problem.builtin_id.empty()) return make_builtin(problem.builtin_id, gamma, problem.order);
  FpeProblem p = problem;
  p.gamma = gamma;
  for (const auto& ce : p.control)
    if (ce.exponent.value(gamma) < 0)
      throw Error(ErrorKind::SchemaError, "control exponent " + to_string(ce.exponent) + " is negative at gamma " +
                                              to_string(gamma));
  return p;
}

FpeProblem with_order(const FpeProblem& problem, int order) {
  if (order < 1) throw Error(ErrorKind::SchemaError, "order must be at least 1");
  if (!problem.builtin_id.empty()) return make_builtin(problem.builtin_id, problem.gamma, order);
  FpeProblem p = problem;
  p.order = order;
  return p;
}

TimeSeries control_series(const FpeProblem& problem) {
  TimeSeries g{problem.dimension, problem.gamma, {}};
  for (const auto& ce : problem.control) g.accumulate(ce.exponent.value(problem.gamma), ce.coeff);
  return g;
}

TimeSeries apply_fp_operator(const TimeSeries& u_in, const FpeProblem& problem, const Rational& cutoff) {
  const TimeSeries u = ts_truncate(u_in, cutoff);
  TimeSeries out{u.dimension, u.gamma, {}};
  if (u.empty()) return out;
  const bool quadratic = !problem.is_linear();
  const TimeSeries u2 = quadratic ? ts_product(u, u, cutoff) : out;
  const auto flux = [&](const FluxTerm& f) {
    TimeSeries t{u.dimension, u.gamma, {}};
    if (!f.linear.empty()) t = ts_add(t, ts_mul_expr(u, f.linear));
    if (!f.quadratic.empty()) t = ts_add(t, ts_mul_expr(u2, f.quadratic));
    return t;
  };
  for (int i = 0; i < problem.dimension; ++i) {
    if (problem.drift[i].absent()) continue;
    out = ts_sub(out, ts_diff(flux(problem.drift[i]), i));
  }
  for (int i = 0; i < problem.dimension; ++i)
    for (int j = 0; j < problem.dimension; ++j) {
      if (problem.diffusion[i][j].absent()) continue;
      out = ts_add(out, ts_diff(ts_diff(flux(problem.diffusion[i][j]), j), i));
    }
  return out;
}

}  // namespace lrps
