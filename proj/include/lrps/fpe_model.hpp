#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrps/rational.hpp"
#include "lrps/series.hpp"
#include "lrps/spatial_expr.hpp"
#include "lrps/special_fn.hpp"

namespace lrps {

/// A(z) * nu + B(z) * nu^2 inside a drift or diffusion derivative.
struct FluxTerm {
  Expr linear;
  Expr quadratic;

  bool absent() const { return linear.empty() && quadratic.empty(); }
};

/// c(z) * tau^(a gamma + b).
struct ControlEntry {
  Expr coeff;
  FracExponent exponent;
};

/// D^gamma nu = -sum_i d_i(drift_i) + sum_ij d_i d_j(diffusion_ij) + g,
/// nu(z, 0) = initial.
struct FpeProblem {
  std::string builtin_id;  // empty for user problems
  std::string name;
  int dimension = 1;
  Rational gamma{1};
  int order = 8;
  std::vector<FluxTerm> drift;                    // size dimension
  std::vector<std::vector<FluxTerm>> diffusion;   // dimension x dimension
  Expr initial;
  std::vector<ControlEntry> control;
  std::optional<ExactSolution> exact;

  bool is_linear() const;
};

bool operator==(const FpeProblem& a, const FpeProblem& b);

/// Throws Error(SchemaError | DimensionError | GammaRangeError | ParseError).
FpeProblem parse_problem(std::string_view json_text);
FpeProblem load_problem(const std::string& path);
std::string serialize_problem(const FpeProblem& problem);

struct ExampleInfo {
  std::string id;
  int dimension;
  std::string description;
};

const std::vector<ExampleInfo>& example_catalog();

/// Built-in problems "1", "2", "4".."8", "s6a", "s6b". Throws
/// Error(UnknownExample).
FpeProblem builtin_example(std::string_view id, const Rational& gamma = 1, int order = 8);

/// Copies with a new gamma or order; built-in problems are rebuilt because
/// their control data depends on both.
FpeProblem with_gamma(const FpeProblem& problem, const Rational& gamma);
FpeProblem with_order(const FpeProblem& problem, int order);

void validate_gamma(const Rational& gamma);

/// The control term as a time series (exponents must be >= 0).
TimeSeries control_series(const FpeProblem& problem);

/// -sum_i d_i(A1_i u + B1_i u^2) + sum_ij d_i d_j(A2_ij u + B2_ij u^2),
/// with u and u^2 truncated above `cutoff`.
TimeSeries apply_fp_operator(const TimeSeries& u, const FpeProblem& problem, const Rational& cutoff);

}  // namespace lrps
