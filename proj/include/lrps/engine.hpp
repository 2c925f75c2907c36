#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrps/fpe_model.hpp"
#include "lrps/series.hpp"

namespace lrps {

enum class StepStatus { Solved, Divergent };

struct StepRecord {
  int k = 0;
  Expr surviving;          // S with p_k = -S
  int cancelled = 0;       // lower-order entries that cancelled exactly
  int numerically_zero = 0;
  StepStatus status = StepStatus::Solved;
};

enum class Outcome { Completed, EarlyTerminated, Inapplicable };

std::string_view to_string(Outcome outcome);

struct EngineReport {
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::Completed;
  int witness_k = 0;             // Inapplicable: step whose limit diverged
  Rational witness_exponent;     // s-exponent of the offending entry
  Expr witness_coeff;
  int terminated_at = 0;         // EarlyTerminated: last computed k
  std::vector<std::string> warnings;
};

struct MittagLefflerForm {
  Expr c;
  Rational r;  // nu = c E_g(r tau^g)
};

struct ClosedForm {
  enum class Kind { MittagLeffler, Polynomial } kind;
  MittagLefflerForm ml;  // MittagLeffler only
};

struct FpsSolution {
  FpeProblem problem;
  std::vector<Expr> coeffs;  // p_0..p_K; shorter when inapplicable
  bool terminated_early = false;
  std::optional<ClosedForm> closed_form;
  std::vector<std::string> warnings;

  bool complete() const { return static_cast<int>(coeffs.size()) == problem.order + 1; }
};

struct SolveResult {
  FpsSolution solution;
  EngineReport report;
};

/// Runs the recursion for k = 1..K. An inapplicable problem is reported
/// through report.outcome, not thrown.
SolveResult solve(const FpeProblem& problem);

/// Like solve but throws Error(Inapplicable) with the witness.
SolveResult solve_checked(const FpeProblem& problem);

/// p_k = c r^k for all computed k, or p_k = 0 for k >= 2. Needs K >= 4.
std::optional<ClosedForm> detect_closed_form(const FpsSolution& sol);

std::string describe(const ClosedForm& form);

/// sum_k p_k(point) tau^(k g) / Gamma(k g + 1).
double evaluate(const FpsSolution& sol, std::span<const double> point, double tau);

/// nu_K as raw time series.
TimeSeries truncated_series(const FpsSolution& sol, int upto);

struct StructuralResidual {
  TimeSeries residual;  // D^g nu_K - FP[nu_K] - g up to (K-1) g
  bool zero = false;
};

StructuralResidual structural_residual(const FpsSolution& sol);

/// Same residual evaluated in double: Caputo part through gamma_fn, operator
/// and control parts through eval, each truncated at (K-1) g.
double numeric_residual(const FpsSolution& sol, std::span<const double> point, double tau);

}  // namespace lrps
