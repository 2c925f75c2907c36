#include "lrps/rational.hpp"

#include <cctype>

#include "lrps/error.hpp"

namespace lrps {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::GammaRangeError: return "GammaRangeError";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorKind::ExactUnavailable: return "ExactUnavailable";
    case ErrorKind::DivisionByZeroExact: return "DivisionByZeroExact";
    case ErrorKind::Inapplicable: return "Inapplicable";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

namespace {

// Unsigned decimal "123" or "12.375".
Rational parse_decimal(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number in '" + std::string(whole) + "'");
  std::string digits;
  long frac_digits = -1;
  for (char c : s) {
    if (c == '.') {
      if (frac_digits >= 0) throw Error(ErrorKind::ParseError, "malformed number '" + std::string(whole) + "'");
      frac_digits = 0;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (frac_digits >= 0) ++frac_digits;
    } else {
      throw Error(ErrorKind::ParseError, "malformed number '" + std::string(whole) + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorKind::ParseError, "malformed number '" + std::string(whole) + "'");
  mpz_class num(digits, 10);
  mpz_class den = 1;
  for (long i = 0; i < frac_digits; ++i) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(s.substr(0, slash), text);
    Rational den = parse_decimal(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    q = num / den;
  } else {
    q = parse_decimal(s, text);
  }
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

long floor_long(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

Rational pow(const Rational& q, long n) {
  Rational base = n < 0 ? Rational(1 / q) : q;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational binomial(long n, long k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(c);
}

}  // namespace lrps
