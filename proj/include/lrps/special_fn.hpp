#pragma once

#include <span>
#include <string_view>

#include "lrps/rational.hpp"
#include "lrps/spatial_expr.hpp"

namespace lrps {

/// Gamma function for x > 0 (Lanczos, g = 7, with Gamma(x+1) = x Gamma(x)
/// below 1/2). Integer arguments up to 171 return the exact factorial.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

struct MlParams {
  Rational gamma_order{1};  // in (0, 1]
  double tol = 1e-15;
  int max_terms = 2000;
};

/// One-parameter Mittag-Leffler function E_g(x) = sum x^n / Gamma(n g + 1),
/// summed until |term| < tol * max(1, |sum|). |x| <= 10.
double mittag_leffler(const MlParams& params, double x);

enum class ExactKind {
  AffinePlusPower,  // c + tau^g / Gamma(g + 1)
  CTimesMlPlus,     // c * E_g(tau^g)
  CTimesMlMinus,    // c * E_g(-tau^g)
  MlShifted,        // c * E_g(tau^g), c an affine shift of the initial data
};

std::string_view to_string(ExactKind kind);
/// "affine_plus_power", "c_times_ml_plus", ... Throws Error(UnknownKind).
ExactKind parse_exact_kind(std::string_view name);

struct ExactSolution {
  ExactKind kind = ExactKind::CTimesMlPlus;
  Expr c;
};

/// Closed-form reference value at (point, tau).
double exact_reference(const ExactSolution& exact, std::span<const double> point, double tau, const Rational& gamma);

}  // namespace lrps
