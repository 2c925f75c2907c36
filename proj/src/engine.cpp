#include "lrps/engine.hpp"

#include <cmath>
#include <set>

#include "lrps/error.hpp"
#include "lrps/special_fn.hpp"

namespace lrps {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Completed: return "Completed";
    case Outcome::EarlyTerminated: return "EarlyTerminated";
    case Outcome::Inapplicable: return "Inapplicable";
  }
  return "?";
}

TimeSeries truncated_series(const FpsSolution& sol, int upto) {
  const Rational& g = sol.problem.gamma;
  TimeSeries nu{sol.problem.dimension, g, {}};
  for (int j = 0; j <= upto && j < static_cast<int>(sol.coeffs.size()); ++j) {
    const Rational e = Rational(j) * g;
    nu.accumulate(e, sol.coeffs[j] * Expr::gamma_token(e + 1, -1));
  }
  return nu;
}

SolveResult solve(const FpeProblem& problem) {
  validate_gamma(problem.gamma);
  SolveResult out;
  FpsSolution& sol = out.solution;
  EngineReport& rep = out.report;
  sol.problem = problem;
  sol.coeffs.push_back(problem.initial);

  const Rational& g = problem.gamma;
  const int d = problem.dimension;
  const bool may_terminate = problem.is_linear() && problem.control.empty();

  LaplaceSeries initial_term{d, g, {}};
  initial_term.accumulate(1, problem.initial);
  const LaplaceSeries control_shifted = ls_shift(laplace_of(control_series(problem)), g);

  int zero_run = 0;
  for (int k = 1; k <= problem.order; ++k) {
    const TimeSeries nu = truncated_series(sol, k - 1);
    const Rational cutoff = Rational(k - 1) * g;
    const LaplaceSeries v = laplace_of(nu);
    const LaplaceSeries op = ls_shift(laplace_of(apply_fp_operator(nu, problem, cutoff)), g);
    const LaplaceSeries lrf = ls_sub(ls_sub(ls_sub(v, initial_term), op), control_shifted);

    const Rational target = Rational(k) * g + 1;
    std::set<Rational> lower;
    for (const LaplaceSeries* part : std::initializer_list<const LaplaceSeries*>{&v, &initial_term, &op, &control_shifted})
      for (const auto& [e, c] : part->entries)
        if (e < target) lower.insert(e);

    P4Result r = p4_extract(lrf, k);
    StepRecord step;
    step.k = k;
    step.surviving = -r.solved;
    step.numerically_zero = r.numerically_zero;
    for (const Rational& e : lower)
      if (!lrf.entries.count(e)) ++step.cancelled;
    for (auto& w : r.warnings) rep.warnings.push_back(std::move(w));

    if (r.status == P4Status::DivergentLimit) {
      step.status = StepStatus::Divergent;
      rep.steps.push_back(std::move(step));
      rep.outcome = Outcome::Inapplicable;
      rep.witness_k = k;
      rep.witness_exponent = r.divergent_exponent;
      rep.witness_coeff = r.divergent_coeff;
      sol.warnings = rep.warnings;
      return out;
    }
    rep.steps.push_back(std::move(step));
    sol.coeffs.push_back(r.solved);

    zero_run = r.solved.empty() ? zero_run + 1 : 0;
    if (may_terminate && zero_run >= 2 && k < problem.order) {
      rep.outcome = Outcome::EarlyTerminated;
      rep.terminated_at = k;
      sol.terminated_early = true;
      sol.coeffs.resize(problem.order + 1);
      break;
    }
  }
  sol.warnings = rep.warnings;
  sol.closed_form = detect_closed_form(sol);
  return out;
}

SolveResult solve_checked(const FpeProblem& problem) {
  SolveResult r = solve(problem);
  if (r.report.outcome == Outcome::Inapplicable)
    throw Error(ErrorKind::Inapplicable,
                "limit condition fails at k = " + std::to_string(r.report.witness_k) + " for gamma = " +
                    to_string(problem.gamma) + ": entry s^-(" + to_string(r.report.witness_exponent) + ") with " +
                    to_string(r.report.witness_coeff) + " does not vanish");
  return r;
}

std::optional<ClosedForm> detect_closed_form(const FpsSolution& sol) {
  if (!sol.complete() || sol.problem.order < 4) return std::nullopt;
  const auto& p = sol.coeffs;
  bool polynomial = true;
  for (std::size_t k = 2; k < p.size(); ++k)
    if (!p[k].empty()) polynomial = false;
  if (polynomial) return ClosedForm{ClosedForm::Kind::Polynomial, {}};

  const Expr& c = p[0];
  if (c.empty() || p[1].empty()) return std::nullopt;
  const Rational r = p[1].terms().front().coeff / c.terms().front().coeff;
  Rational rk = 1;
  for (std::size_t k = 1; k < p.size(); ++k) {
    rk *= r;
    if (scale(c, rk) != p[k]) return std::nullopt;
  }
  return ClosedForm{ClosedForm::Kind::MittagLeffler, MittagLefflerForm{c, r}};
}

std::string describe(const ClosedForm& form) {
  if (form.kind == ClosedForm::Kind::Polynomial) return "polynomial in tau^gamma (p_k = 0 for k >= 2)";
  const Rational& r = form.ml.r;
  std::string arg = "tau^gamma";
  if (r == -1) arg = "-" + arg;
  else if (r != 1) arg = to_string(r) + "*" + arg;
  const std::string c = to_string(form.ml.c);
  return (form.ml.c.size() > 1 ? "(" + c + ")" : c) + " * E_gamma(" + arg + ")";
}

double evaluate(const FpsSolution& sol, std::span<const double> point, double tau) {
  if (tau < 0) throw Error(ErrorKind::DomainError, "negative time");
  const double g = sol.problem.gamma.get_d();
  double sum = 0;
  for (std::size_t k = 0; k < sol.coeffs.size(); ++k) {
    if (sol.coeffs[k].empty()) continue;
    const double e = static_cast<double>(k) * g;
    const double t = k == 0 ? 1.0 : std::pow(tau, e);
    if (t == 0) continue;
    sum += eval(sol.coeffs[k], point) * t / gamma_fn(e + 1);
  }
  return sum;
}

StructuralResidual structural_residual(const FpsSolution& sol) {
  const FpeProblem& pb = sol.problem;
  const int K = static_cast<int>(sol.coeffs.size()) - 1;
  const Rational cutoff = Rational(K - 1) * pb.gamma;
  const TimeSeries nu = truncated_series(sol, K);
  TimeSeries r = ts_truncate(caputo_ts(nu), cutoff);
  r = ts_sub(r, apply_fp_operator(nu, pb, cutoff));
  r = ts_sub(r, ts_truncate(control_series(pb), cutoff));
  StructuralResidual out;
  out.zero = r.empty();
  out.residual = std::move(r);
  return out;
}

double numeric_residual(const FpsSolution& sol, std::span<const double> point, double tau) {
  const FpeProblem& pb = sol.problem;
  const int K = static_cast<int>(sol.coeffs.size()) - 1;
  const Rational cutoff = Rational(K - 1) * pb.gamma;
  const double g = pb.gamma.get_d();
  double caputo = 0;
  for (int k = 1; k <= K; ++k) {
    if (sol.coeffs[k].empty()) continue;
    const double e = (k - 1) * g;
    caputo += eval(sol.coeffs[k], point) * (k == 1 ? 1.0 : std::pow(tau, e)) / gamma_fn(e + 1);
  }
  const double op = eval(apply_fp_operator(truncated_series(sol, K), pb, cutoff), point, tau);
  const double control = eval(ts_truncate(control_series(pb), cutoff), point, tau);
  return caputo - op - control;
}

}  // namespace lrps
