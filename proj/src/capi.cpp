#include "lrps/lrps.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lrps/engine.hpp"
#include "lrps/error.hpp"
#include "lrps/fpe_model.hpp"
#include "lrps/report.hpp"

struct lrps_problem {
  lrps::FpeProblem problem;
};

struct lrps_solution {
  lrps::SolveResult result;
};

namespace {

thread_local std::string last_error;

lrps_status status_of(lrps::ErrorKind kind) {
  using lrps::ErrorKind;
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::DimensionError:
    case ErrorKind::GammaRangeError:
    case ErrorKind::UnknownExample:
    case ErrorKind::UnknownKind:
    case ErrorKind::ParseError:
    case ErrorKind::ExactUnavailable:
      return LRPS_INVALID;
    case ErrorKind::Inapplicable:
      return LRPS_INAPPLICABLE;
    case ErrorKind::DomainError:
    case ErrorKind::NoConvergence:
    case ErrorKind::PoleAtPoint:
    case ErrorKind::UnsupportedExponent:
    case ErrorKind::DivisionByZeroExact:
      return LRPS_NUMERIC;
    case ErrorKind::IoError:
      return LRPS_IO;
  }
  return LRPS_INTERNAL;
}

template <class F>
lrps_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const lrps::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return LRPS_INTERNAL;
}

lrps_status fail(lrps_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

lrps::Format format_of(lrps_format f) {
  switch (f) {
    case LRPS_FORMAT_CSV: return lrps::Format::Csv;
    case LRPS_FORMAT_JSON: return lrps::Format::Json;
    case LRPS_FORMAT_PRETTY: return lrps::Format::Pretty;
  }
  throw lrps::Error(lrps::ErrorKind::SchemaError, "unknown output format");
}

std::string render(const lrps::Table& t, lrps_format f) {
  std::ostringstream os;
  lrps::emit(t, format_of(f), os);
  return os.str();
}

std::vector<lrps::Rational> gammas_from(const char* const* gammas, std::size_t n) {
  std::vector<lrps::Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!gammas[i]) throw lrps::Error(lrps::ErrorKind::SchemaError, "null gamma string");
    out.push_back(lrps::parse_rational(gammas[i]));
  }
  return out;
}

lrps::TableSpec spec_from(const lrps_table_spec* s) {
  if (!s) throw lrps::Error(lrps::ErrorKind::SchemaError, "null table spec");
  lrps::TableSpec spec;
  if (s->point_count && (!s->points || s->point_dim == 0))
    throw lrps::Error(lrps::ErrorKind::SchemaError, "points given without coordinates");
  for (std::size_t i = 0; i < s->point_count; ++i)
    spec.points.emplace_back(s->points + i * s->point_dim, s->points + (i + 1) * s->point_dim);
  if (s->time_count && !s->times) throw lrps::Error(lrps::ErrorKind::SchemaError, "null times");
  spec.times.assign(s->times, s->times + s->time_count);
  spec.gammas = gammas_from(s->gammas, s->gamma_count);
  spec.columns = s->columns;
  if (spec.columns == 0 || spec.columns > 15) throw lrps::Error(lrps::ErrorKind::SchemaError, "bad column mask");
  return spec;
}

std::string solution_json(const lrps::SolveResult& r) {
  using lrps::to_string;
  nlohmann::ordered_json doc;
  const auto& sol = r.solution;
  doc["gamma"] = to_string(sol.problem.gamma);
  doc["order"] = sol.problem.order;
  doc["outcome"] = std::string(to_string(r.report.outcome));
  if (r.report.outcome == lrps::Outcome::Inapplicable) {
    doc["witness"] = {{"k", r.report.witness_k},
                      {"s_exponent", to_string(r.report.witness_exponent)},
                      {"coefficient", to_string(r.report.witness_coeff)}};
  }
  if (r.report.outcome == lrps::Outcome::EarlyTerminated) doc["terminated_at"] = r.report.terminated_at;
  doc["coefficients"] = nlohmann::ordered_json::array();
  for (const auto& p : sol.coeffs) doc["coefficients"].push_back(to_string(p));
  doc["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : r.report.steps)
    doc["steps"].push_back({{"k", s.k},
                            {"surviving", to_string(s.surviving)},
                            {"cancelled", s.cancelled},
                            {"numerically_zero", s.numerically_zero},
                            {"status", s.status == lrps::StepStatus::Solved ? "solved" : "divergent"}});
  if (sol.closed_form) doc["closed_form"] = describe(*sol.closed_form);
  else doc["closed_form"] = nullptr;
  doc["warnings"] = r.report.warnings;
  return doc.dump(2) + "\n";
}

std::string solution_text(const lrps::SolveResult& r) {
  using lrps::to_string;
  std::ostringstream os;
  const auto& sol = r.solution;
  os << "gamma " << to_string(sol.problem.gamma) << ", order " << sol.problem.order << ": "
     << to_string(r.report.outcome);
  if (r.report.outcome == lrps::Outcome::Inapplicable)
    os << " at k = " << r.report.witness_k << " (s^-(" << to_string(r.report.witness_exponent) << ") term "
       << to_string(r.report.witness_coeff) << " does not vanish)";
  if (r.report.outcome == lrps::Outcome::EarlyTerminated)
    os << " after k = " << r.report.terminated_at << " (remaining coefficients are zero)";
  os << "\n";
  for (std::size_t k = 0; k < sol.coeffs.size(); ++k) os << "p" << k << " = " << to_string(sol.coeffs[k]) << "\n";
  if (sol.closed_form) os << "closed form: " << describe(*sol.closed_form) << "\n";
  for (const auto& w : r.report.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace

extern "C" {

const char* lrps_version(void) { return "0.1.0"; }

const char* lrps_last_error(void) { return last_error.c_str(); }

void lrps_string_free(char* s) { std::free(s); }

lrps_status lrps_problem_from_example(const char* id, lrps_problem** out) {
  return guarded([&] {
    if (!id || !out) return fail(LRPS_INVALID, "null argument");
    *out = new lrps_problem{lrps::builtin_example(id)};
    return LRPS_OK;
  });
}

lrps_status lrps_problem_from_json(const char* json, lrps_problem** out) {
  return guarded([&] {
    if (!json || !out) return fail(LRPS_INVALID, "null argument");
    *out = new lrps_problem{lrps::parse_problem(json)};
    return LRPS_OK;
  });
}

lrps_status lrps_problem_from_file(const char* path, lrps_problem** out) {
  return guarded([&] {
    if (!path || !out) return fail(LRPS_INVALID, "null argument");
    *out = new lrps_problem{lrps::load_problem(path)};
    return LRPS_OK;
  });
}

lrps_status lrps_problem_set_gamma(lrps_problem* problem, const char* gamma) {
  return guarded([&] {
    if (!problem || !gamma) return fail(LRPS_INVALID, "null argument");
    problem->problem = lrps::with_gamma(problem->problem, lrps::parse_rational(gamma));
    return LRPS_OK;
  });
}

lrps_status lrps_problem_set_order(lrps_problem* problem, int order) {
  return guarded([&] {
    if (!problem) return fail(LRPS_INVALID, "null argument");
    problem->problem = lrps::with_order(problem->problem, order);
    return LRPS_OK;
  });
}

lrps_status lrps_problem_to_json(const lrps_problem* problem, char** out) {
  return guarded([&] {
    if (!problem || !out) return fail(LRPS_INVALID, "null argument");
    *out = dup(lrps::serialize_problem(problem->problem));
    return LRPS_OK;
  });
}

int lrps_problem_dimension(const lrps_problem* problem) { return problem ? problem->problem.dimension : 0; }

void lrps_problem_free(lrps_problem* problem) { delete problem; }

lrps_status lrps_solve(const lrps_problem* problem, lrps_solution** out) {
  return guarded([&] {
    if (!problem || !out) return fail(LRPS_INVALID, "null argument");
    *out = new lrps_solution{lrps::solve(problem->problem)};
    const auto& rep = (*out)->result.report;
    if (rep.outcome == lrps::Outcome::Inapplicable)
      return fail(LRPS_INAPPLICABLE, "Inapplicable: limit condition fails at k = " + std::to_string(rep.witness_k) +
                                         " (s^-(" + lrps::to_string(rep.witness_exponent) + ") term " +
                                         lrps::to_string(rep.witness_coeff) + " does not vanish)");
    return LRPS_OK;
  });
}

lrps_outcome lrps_solution_outcome(const lrps_solution* sol) {
  if (!sol) return LRPS_OUTCOME_INAPPLICABLE;
  switch (sol->result.report.outcome) {
    case lrps::Outcome::Completed: return LRPS_OUTCOME_COMPLETED;
    case lrps::Outcome::EarlyTerminated: return LRPS_OUTCOME_EARLY_TERMINATED;
    case lrps::Outcome::Inapplicable: return LRPS_OUTCOME_INAPPLICABLE;
  }
  return LRPS_OUTCOME_INAPPLICABLE;
}

int lrps_solution_witness_k(const lrps_solution* sol) { return sol ? sol->result.report.witness_k : 0; }

size_t lrps_solution_count(const lrps_solution* sol) { return sol ? sol->result.solution.coeffs.size() : 0; }

lrps_status lrps_solution_coefficient(const lrps_solution* sol, size_t k, char** out) {
  return guarded([&] {
    if (!sol || !out) return fail(LRPS_INVALID, "null argument");
    const auto& c = sol->result.solution.coeffs;
    if (k >= c.size()) return fail(LRPS_INVALID, "coefficient index " + std::to_string(k) + " out of range");
    *out = dup(lrps::to_string(c[k]));
    return LRPS_OK;
  });
}

lrps_status lrps_solution_evaluate(const lrps_solution* sol, const double* point, size_t dim, double tau,
                                   double* out) {
  return guarded([&] {
    if (!sol || !out || (dim && !point)) return fail(LRPS_INVALID, "null argument");
    const int d = sol->result.solution.problem.dimension;
    if (static_cast<int>(dim) != d)
      return fail(LRPS_INVALID, "point has " + std::to_string(dim) + " coordinates, problem has " + std::to_string(d));
    *out = lrps::evaluate(sol->result.solution, std::span<const double>(point, dim), tau);
    return LRPS_OK;
  });
}

lrps_status lrps_solution_closed_form(const lrps_solution* sol, char** out) {
  return guarded([&] {
    if (!sol || !out) return fail(LRPS_INVALID, "null argument");
    const auto& cf = sol->result.solution.closed_form;
    *out = cf ? dup(lrps::describe(*cf)) : nullptr;
    return LRPS_OK;
  });
}

lrps_status lrps_solution_report(const lrps_solution* sol, lrps_format format, char** out) {
  return guarded([&] {
    if (!sol || !out) return fail(LRPS_INVALID, "null argument");
    *out = dup(format == LRPS_FORMAT_JSON ? solution_json(sol->result) : solution_text(sol->result));
    return LRPS_OK;
  });
}

void lrps_solution_free(lrps_solution* sol) { delete sol; }

lrps_status lrps_parse_columns(const char* list, uint32_t* out) {
  return guarded([&] {
    if (!list || !out) return fail(LRPS_INVALID, "null argument");
    *out = lrps::parse_columns(list);
    return LRPS_OK;
  });
}

lrps_status lrps_parse_format(const char* name, lrps_format* out) {
  return guarded([&] {
    if (!name || !out) return fail(LRPS_INVALID, "null argument");
    switch (lrps::parse_format(name)) {
      case lrps::Format::Csv: *out = LRPS_FORMAT_CSV; break;
      case lrps::Format::Json: *out = LRPS_FORMAT_JSON; break;
      case lrps::Format::Pretty: *out = LRPS_FORMAT_PRETTY; break;
    }
    return LRPS_OK;
  });
}

lrps_status lrps_run_table(const lrps_problem* problem, const lrps_table_spec* spec, lrps_format format, char** out) {
  return guarded([&] {
    if (!problem || !out) return fail(LRPS_INVALID, "null argument");
    *out = dup(render(lrps::run_table(problem->problem, spec_from(spec)), format));
    return LRPS_OK;
  });
}

lrps_status lrps_run_order_sweep(const lrps_problem* problem, const lrps_table_spec* spec, const int* orders,
                                 size_t order_count, lrps_format format, char** out) {
  return guarded([&] {
    if (!problem || !out || (order_count && !orders)) return fail(LRPS_INVALID, "null argument");
    std::vector<int> ks(orders, orders + order_count);
    *out = dup(render(lrps::run_order_sweep(problem->problem, spec_from(spec), ks), format));
    return LRPS_OK;
  });
}

lrps_status lrps_run_residual_check(const lrps_problem* problem, const char* const* gammas, size_t gamma_count,
                                    lrps_format format, char** out) {
  return guarded([&] {
    if (!problem || !out || (gamma_count && !gammas)) return fail(LRPS_INVALID, "null argument");
    const auto entries = lrps::residual_check(problem->problem, gammas_from(gammas, gamma_count));
    *out = dup(render(lrps::residual_table(entries), format));
    for (const auto& e : entries)
      if (e.outcome == lrps::Outcome::Inapplicable)
        return fail(LRPS_INAPPLICABLE, "Inapplicable: gamma " + lrps::to_string(e.gamma) +
                                           ", limit condition fails at k = " + std::to_string(e.witness_k));
    for (const auto& e : entries)
      if (!e.structural_zero || !(e.max_abs_residual() < 1e-9))
        return fail(LRPS_NUMERIC, "residual does not vanish at gamma " + lrps::to_string(e.gamma));
    return LRPS_OK;
  });
}

lrps_status lrps_examples(lrps_format format, char** out) {
  return guarded([&] {
    if (!out) return fail(LRPS_INVALID, "null argument");
    lrps::Table t;
    t.header = {"id", "dimension", "exact", "description"};
    for (const auto& info : lrps::example_catalog()) {
      const auto p = lrps::builtin_example(info.id);
      t.rows.push_back({info.id, static_cast<long long>(info.dimension),
                        p.exact ? std::string(lrps::to_string(p.exact->kind)) : std::string("none"),
                        info.description});
    }
    *out = dup(render(t, format));
    return LRPS_OK;
  });
}

}  // extern "C"
