#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lrps {

/// Arbitrary-precision exact rational. All symbolic coefficient arithmetic
/// goes through this type; floating point only appears at evaluation time.
using Rational = mpq_class;

/// Parses "3", "-4/5", "0.75", "1.5/2" exactly. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// "3", "-4/5".
std::string to_string(const Rational& q);

inline int cmp(const Rational& a, const Rational& b) {
  const int c = ::cmp(a, b);
  return (c > 0) - (c < 0);
}

/// n/d in canonical form; mpq_class(n, d) alone does not reduce.
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// floor(q) as a machine integer; q must fit in a long.
long floor_long(const Rational& q);

/// q^n for integer n (n < 0 requires q != 0).
Rational pow(const Rational& q, long n);

/// Binomial coefficient C(n, k) for 0 <= k <= n.
Rational binomial(long n, long k);

}  // namespace lrps
