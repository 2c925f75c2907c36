#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lrps/rational.hpp"
#include "lrps/spatial_expr.hpp"

namespace lrps {

/// a*gamma + b for the problem's fixed rational gamma.
struct FracExponent {
  Rational a;
  Rational b;

  Rational value(const Rational& gamma) const { return a * gamma + b; }
};

std::string to_string(const FracExponent& e);

/// Map from exponent value to coefficient. Entries with equal values are the
/// same entry; structurally zero coefficients are never stored.
using SeriesEntries = std::map<Rational, Expr>;

/// sum_e c_e(z) * tau^e with raw coefficients.
struct TimeSeries {
  int dimension = 1;
  Rational gamma{1};
  SeriesEntries entries;

  /// Adds c at exponent e, merging and dropping zeros.
  void accumulate(const Rational& e, const Expr& c);
  bool empty() const { return entries.empty(); }
};

/// sum_e c_e(z) * s^-e.
struct LaplaceSeries {
  int dimension = 1;
  Rational gamma{1};
  SeriesEntries entries;

  void accumulate(const Rational& e, const Expr& c);
  bool empty() const { return entries.empty(); }
};

bool operator==(const TimeSeries& a, const TimeSeries& b);
bool operator==(const LaplaceSeries& a, const LaplaceSeries& b);

TimeSeries ts_add(const TimeSeries& u, const TimeSeries& v);
TimeSeries ts_sub(const TimeSeries& u, const TimeSeries& v);
TimeSeries ts_scale(const TimeSeries& u, const Rational& c);
TimeSeries ts_mul_expr(const TimeSeries& u, const Expr& c);
/// Cauchy product keeping exponents <= cutoff.
TimeSeries ts_product(const TimeSeries& u, const TimeSeries& v, const Rational& cutoff);
TimeSeries ts_diff(const TimeSeries& u, int var);
TimeSeries ts_truncate(const TimeSeries& u, const Rational& cutoff);

/// Termwise power rule: tau^e -> Gamma(e+1)/Gamma(e+1-gamma) tau^(e-gamma),
/// constants dropped. Throws Error(UnsupportedExponent) for 0 < e < gamma.
TimeSeries caputo_ts(const TimeSeries& u);

/// tau^e -> Gamma(e+1) s^-(e+1).
LaplaceSeries laplace_of(const TimeSeries& u);
/// s^-e -> tau^(e-1) / Gamma(e). Throws Error(UnsupportedExponent) for e < 1.
TimeSeries inverse_laplace(const LaplaceSeries& v);

LaplaceSeries ls_add(const LaplaceSeries& u, const LaplaceSeries& v);
LaplaceSeries ls_sub(const LaplaceSeries& u, const LaplaceSeries& v);
/// Multiplies by s^-by (by >= 0).
LaplaceSeries ls_shift(const LaplaceSeries& v, const Rational& by);

double eval(const TimeSeries& u, std::span<const double> point, double tau);

enum class P4Status { Ok, DivergentLimit };

struct P4Result {
  Expr solved;
  P4Status status = P4Status::Ok;
  Rational divergent_exponent;  // set when status is DivergentLimit
  Expr divergent_coeff;
  int vanishing = 0;            // m < 0 entries
  int surviving = 0;            // m = 0 entries
  int numerically_zero = 0;     // m > 0 entries accepted by sampling
  std::vector<std::string> warnings;
};

/// Applies lim s^(k gamma + 1) LR_k = 0 to an LRF assembled without the
/// unknown p_k; the solved coefficient is minus the surviving sum.
P4Result p4_extract(const LaplaceSeries& lrf, int k);

std::string to_string(const TimeSeries& u);
std::string to_string(const LaplaceSeries& v);

}  // namespace lrps
