#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lrps/rational.hpp"

namespace lrps {

inline constexpr int kMaxDimension = 3;

/// The linear factor (z_var + shift). Variables are 0-based; they print as
/// z1..z3.
struct Affine {
  int var = 0;
  Rational shift;
};

int compare(const Affine& a, const Affine& b);
inline bool operator<(const Affine& a, const Affine& b) { return compare(a, b) < 0; }
inline bool operator==(const Affine& a, const Affine& b) { return compare(a, b) == 0; }

enum class TrigKind { Sin, Cos };

/// sin or cos of scale * [pi] * (z_var + shift). Normalized with scale > 0.
struct Trig {
  TrigKind kind = TrigKind::Sin;
  int var = 0;
  Rational scale{1};
  bool times_pi = false;
  Rational shift;
};

int compare(const Trig& a, const Trig& b);

class Expr;

/// Everything in a term except its rational coefficient.
///
/// Normal form per variable: either a monomial z^n (n > 0), or a single
/// pole (z + a)^-m, or nothing. Products of poles are split by partial
/// fractions and monomials times a shifted pole are rewritten around that
/// pole, so equal rational functions share one representation.
///
/// Gamma tokens Gamma(f)^n are kept with f in (0, 1); Gamma of any other
/// positive rational is reduced to one of those times a rational through
/// Gamma(x + 1) = x Gamma(x).
struct Factors {
  int pi_power = 0;
  std::vector<std::pair<Rational, int>> gamma;    // sorted by argument
  std::vector<std::pair<Affine, int>> powers;     // sorted by Affine
  std::shared_ptr<const Expr> exp_arg;            // null: no exponential
  std::vector<Trig> trig;                         // sorted multiset
};

int compare(const Factors& a, const Factors& b);

struct Term {
  Rational coeff;
  Factors factors;
};

/// A normalized function of up to three spatial variables: a sorted sum of
/// terms with distinct factor keys and nonzero coefficients. Immutable once
/// built; all operations return new values.
class Expr {
 public:
  Expr() = default;

  static Expr constant(const Rational& c);
  static Expr variable(int var);
  /// (z_var + shift)^exponent, exponent may be negative.
  static Expr affine_power(int var, const Rational& shift, int exponent);
  static Expr pi(int power = 1);
  /// Gamma(arg)^power for a positive rational arg, as an exact constant.
  static Expr gamma_token(const Rational& arg, int power = 1);
  /// exp(arg); arg must be a polynomial (no exp, trig, pi, gamma or poles).
  static Expr exp_of(const Expr& arg);
  static Expr trig(TrigKind kind, int var, const Rational& scale, bool times_pi, const Rational& shift);

  /// Builds a normalized expression from arbitrary (unnormalized) terms.
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Largest variable index referenced anywhere, -1 for constants.
  int max_var() const;
  /// No exp, trig, pi, gamma tokens or negative powers.
  bool is_polynomial() const;
  /// Only a rational constant (possibly zero).
  bool is_rational_constant() const;

 private:
  std::vector<Term> terms_;
};

int compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }

Expr add(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr scale(const Expr& a, const Rational& c);
Expr neg(const Expr& a);
Expr diff(const Expr& a, int var);

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }
inline Expr operator-(const Expr& a, const Expr& b) { return add(a, neg(b)); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator*(const Rational& c, const Expr& a) { return scale(a, c); }

/// Floating-point value at `point` (point[i] is z_{i+1}). Throws
/// Error(PoleAtPoint) when a pole factor vanishes and Error(DimensionError)
/// when the point is too short.
double eval(const Expr& a, std::span<const double> point);

enum class ZeroStatus { Zero, NonZero, NumericallyZero };
enum class Sampling { Off, On };

/// Structural zero test, optionally backed by evaluation at 8 fixed sample
/// points in [0.1, 0.9]^d. NumericallyZero means terms remain but every
/// sample is below 1e-9 in magnitude (typically an unreduced trig identity).
ZeroStatus is_zero(const Expr& a, Sampling sampling, int dimension = 0);

/// Deterministic sample points used by is_zero (pole-free for `a`).
std::vector<std::vector<double>> sample_points(const Expr& a, int dimension, std::size_t count);

/// Renders in the problem-file expression syntax, e.g.
/// "2*z1^2 - z1 + 1/4", "(z3-1)^-1", "exp(z1^2 - z1 + 1/4)*sin(pi*z1)".
std::string to_string(const Expr& a);

}  // namespace lrps
