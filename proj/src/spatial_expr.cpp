#include "lrps/spatial_expr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "lrps/error.hpp"
#include "lrps/special_fn.hpp"

namespace lrps {

namespace {

template <class T, class Cmp>
int compare_seq(const std::vector<T>& a, const std::vector<T>& b, Cmp cmp_elem) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = cmp_elem(a[i], b[i]); c != 0) return c;
  }
  return (a.size() > b.size()) - (a.size() < b.size());
}

int compare_int(int a, int b) { return (a > b) - (a < b); }

// Sorted (key, exponent) vectors with zero exponents removed.
template <class K, class Cmp>
void add_exponent(std::vector<std::pair<K, int>>& v, const K& key, int delta, Cmp cmp_key) {
  auto it = std::lower_bound(v.begin(), v.end(), key,
                             [&](const auto& entry, const K& k) { return cmp_key(entry.first, k) < 0; });
  if (it != v.end() && cmp_key(it->first, key) == 0) {
    it->second += delta;
    if (it->second == 0) v.erase(it);
  } else if (delta != 0) {
    v.insert(it, {key, delta});
  }
}

void add_power(Factors& f, const Affine& a, int delta) {
  add_exponent(f.powers, a, delta, [](const Affine& x, const Affine& y) { return compare(x, y); });
}

void add_gamma(Factors& f, const Rational& arg, int delta) {
  add_exponent(f.gamma, arg, delta, [](const Rational& x, const Rational& y) { return cmp(x, y); });
}

int power_of(const Factors& f, const Affine& a) {
  for (const auto& [key, e] : f.powers)
    if (key == a) return e;
  return 0;
}

Term multiply_terms(const Term& a, const Term& b) {
  Term t;
  t.coeff = a.coeff * b.coeff;
  t.factors.pi_power = a.factors.pi_power + b.factors.pi_power;
  t.factors.gamma = a.factors.gamma;
  for (const auto& [arg, e] : b.factors.gamma) add_gamma(t.factors, arg, e);
  t.factors.powers = a.factors.powers;
  for (const auto& [aff, e] : b.factors.powers) add_power(t.factors, aff, e);
  if (a.factors.exp_arg && b.factors.exp_arg) {
    Expr sum = add(*a.factors.exp_arg, *b.factors.exp_arg);
    if (!sum.empty()) t.factors.exp_arg = std::make_shared<const Expr>(std::move(sum));
  } else {
    t.factors.exp_arg = a.factors.exp_arg ? a.factors.exp_arg : b.factors.exp_arg;
  }
  t.factors.trig = a.factors.trig;
  t.factors.trig.insert(t.factors.trig.end(), b.factors.trig.begin(), b.factors.trig.end());
  return t;
}

// One rewrite step on the factors of variable `v`; nullopt when the term is
// already in normal form for that variable.
std::optional<std::vector<Term>> rewrite_variable(const Term& t, int v) {
  std::vector<std::pair<Rational, int>> entries;
  for (const auto& [aff, e] : t.factors.powers)
    if (aff.var == v) entries.emplace_back(aff.shift, e);

  // Positive powers of shifted factors expand into monomials.
  for (const auto& [shift, e] : entries) {
    if (shift == 0 || e <= 0) continue;
    std::vector<Term> out;
    for (int j = 0; j <= e; ++j) {
      Term piece = t;
      add_power(piece.factors, Affine{v, shift}, -e);
      add_power(piece.factors, Affine{v, 0}, j);
      piece.coeff *= binomial(e, j) * pow(shift, e - j);
      out.push_back(std::move(piece));
    }
    return out;
  }

  std::vector<Rational> poles;
  for (const auto& [shift, e] : entries)
    if (e < 0) poles.push_back(shift);

  // 1/((z+a)(z+b)) = (1/(z+a) - 1/(z+b)) / (b-a)
  if (poles.size() >= 2) {
    const Rational& a = poles[0];
    const Rational& b = poles[1];
    const Rational inv = 1 / Rational(b - a);
    Term first = t;
    add_power(first.factors, Affine{v, b}, 1);
    first.coeff *= inv;
    Term second = t;
    add_power(second.factors, Affine{v, a}, 1);
    second.coeff *= -inv;
    return std::vector<Term>{std::move(first), std::move(second)};
  }

  // z^n (z+a)^-m with a != 0: expand z^n = ((z+a) - a)^n around the pole.
  if (poles.size() == 1 && poles[0] != 0) {
    const int n = power_of(t.factors, Affine{v, 0});
    if (n > 0) {
      const Rational& a = poles[0];
      std::vector<Term> out;
      for (int j = 0; j <= n; ++j) {
        Term piece = t;
        add_power(piece.factors, Affine{v, 0}, -n);
        add_power(piece.factors, Affine{v, a}, j);
        piece.coeff *= binomial(n, j) * pow(Rational(-a), n - j);
        out.push_back(std::move(piece));
      }
      return out;
    }
  }
  return std::nullopt;
}

void normalize_into(Term t, std::vector<Term>& out) {
  if (t.coeff == 0) return;
  if (t.factors.exp_arg && t.factors.exp_arg->empty()) t.factors.exp_arg.reset();
  // Gamma(1/2)^2 = pi
  for (auto it = t.factors.gamma.begin(); it != t.factors.gamma.end(); ++it) {
    if (it->first != Rational(1, 2)) continue;
    const int odd = ((it->second % 2) + 2) % 2;
    t.factors.pi_power += (it->second - odd) / 2;
    if (odd) it->second = odd;
    else t.factors.gamma.erase(it);
    break;
  }
  for (int v = 0; v < kMaxDimension; ++v) {
    if (auto pieces = rewrite_variable(t, v)) {
      for (auto& piece : *pieces) normalize_into(std::move(piece), out);
      return;
    }
  }
  std::sort(t.factors.trig.begin(), t.factors.trig.end(),
            [](const Trig& a, const Trig& b) { return compare(a, b) < 0; });
  out.push_back(std::move(t));
}

Expr from_single(Term t) {
  std::vector<Term> v;
  v.push_back(std::move(t));
  return Expr::from_terms(std::move(v));
}

Expr diff_term(const Term& t, int var) {
  std::vector<Term> pieces;
  for (const auto& [aff, e] : t.factors.powers) {
    if (aff.var != var) continue;
    Term d = t;
    d.coeff *= e;
    add_power(d.factors, aff, -1);
    pieces.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < t.factors.trig.size(); ++i) {
    const Trig& g = t.factors.trig[i];
    if (g.var != var) continue;
    Term d = t;
    Trig& dg = d.factors.trig[i];
    d.coeff *= g.scale;
    if (g.times_pi) d.factors.pi_power += 1;
    if (g.kind == TrigKind::Sin) {
      dg.kind = TrigKind::Cos;
    } else {
      dg.kind = TrigKind::Sin;
      d.coeff = -d.coeff;
    }
    pieces.push_back(std::move(d));
  }
  Expr result = Expr::from_terms(std::move(pieces));
  if (t.factors.exp_arg) {
    Expr inner = diff(*t.factors.exp_arg, var);
    result = add(result, mul(inner, from_single(t)));
  }
  return result;
}

void check_var(int var) {
  if (var < 0 || var >= kMaxDimension)
    throw Error(ErrorKind::DimensionError, "variable index " + std::to_string(var) + " out of range");
}

double eval_term(const Term& t, std::span<const double> point) {
  double value = t.coeff.get_d();
  if (t.factors.pi_power != 0) value *= std::pow(std::numbers::pi, t.factors.pi_power);
  for (const auto& [arg, e] : t.factors.gamma) value *= std::pow(gamma_fn(arg.get_d()), e);
  for (const auto& [aff, e] : t.factors.powers) {
    if (static_cast<std::size_t>(aff.var) >= point.size())
      throw Error(ErrorKind::DimensionError, "point has no coordinate z" + std::to_string(aff.var + 1));
    const double base = point[aff.var] + aff.shift.get_d();
    if (base == 0.0 && e < 0)
      throw Error(ErrorKind::PoleAtPoint, "factor (z" + std::to_string(aff.var + 1) + (aff.shift >= 0 ? "+" : "") +
                                              to_string(aff.shift) + ")^" + std::to_string(e) + " vanishes");
    value *= std::pow(base, e);
  }
  if (t.factors.exp_arg) value *= std::exp(eval(*t.factors.exp_arg, point));
  for (const Trig& g : t.factors.trig) {
    if (static_cast<std::size_t>(g.var) >= point.size())
      throw Error(ErrorKind::DimensionError, "point has no coordinate z" + std::to_string(g.var + 1));
    double arg = g.scale.get_d() * (point[g.var] + g.shift.get_d());
    if (g.times_pi) arg *= std::numbers::pi;
    value *= g.kind == TrigKind::Sin ? std::sin(arg) : std::cos(arg);
  }
  return value;
}

std::string render_affine(int var, const Rational& shift) {
  std::string s = "z" + std::to_string(var + 1);
  if (shift == 0) return s;
  return "(" + s + (shift > 0 ? "+" : "") + to_string(shift) + ")";
}

std::string render_factors(const Factors& f) {
  std::vector<std::string> parts;
  if (f.pi_power == 1) parts.push_back("pi");
  else if (f.pi_power != 0) parts.push_back("pi^" + std::to_string(f.pi_power));
  for (const auto& [arg, e] : f.gamma) {
    std::string g = "Gamma(" + to_string(arg) + ")";
    if (e != 1) g += "^" + std::to_string(e);
    parts.push_back(std::move(g));
  }
  for (const auto& [aff, e] : f.powers) {
    std::string p = render_affine(aff.var, aff.shift);
    if (e != 1) p += "^" + std::to_string(e);
    parts.push_back(std::move(p));
  }
  if (f.exp_arg) parts.push_back("exp(" + to_string(*f.exp_arg) + ")");
  for (const Trig& g : f.trig) {
    std::string arg;
    if (g.scale != 1) arg += to_string(g.scale) + "*";
    if (g.times_pi) arg += "pi*";
    arg += render_affine(g.var, g.shift);
    parts.push_back(std::string(g.kind == TrigKind::Sin ? "sin(" : "cos(") + arg + ")");
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i];
  }
  return out;
}

// Radical-inverse (Halton) coordinate.
double halton(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace

int compare(const Affine& a, const Affine& b) {
  if (int c = compare_int(a.var, b.var); c != 0) return c;
  return cmp(a.shift, b.shift);
}

int compare(const Trig& a, const Trig& b) {
  if (int c = compare_int(static_cast<int>(a.kind), static_cast<int>(b.kind)); c != 0) return c;
  if (int c = compare_int(a.var, b.var); c != 0) return c;
  if (int c = compare_int(a.times_pi, b.times_pi); c != 0) return c;
  if (int c = cmp(a.scale, b.scale); c != 0) return c;
  return cmp(a.shift, b.shift);
}

int compare(const Factors& a, const Factors& b) {
  if (int c = compare_int(a.pi_power, b.pi_power); c != 0) return c;
  if (int c = compare_seq(a.gamma, b.gamma,
                          [](const auto& x, const auto& y) {
                            if (int d = cmp(x.first, y.first); d != 0) return d;
                            return compare_int(x.second, y.second);
                          });
      c != 0)
    return c;
  if (int c = compare_seq(a.powers, b.powers,
                          [](const auto& x, const auto& y) {
                            if (int d = compare(x.first, y.first); d != 0) return d;
                            return compare_int(x.second, y.second);
                          });
      c != 0)
    return c;
  if (static_cast<bool>(a.exp_arg) != static_cast<bool>(b.exp_arg)) return a.exp_arg ? 1 : -1;
  if (a.exp_arg) {
    if (int c = compare(*a.exp_arg, *b.exp_arg); c != 0) return c;
  }
  return compare_seq(a.trig, b.trig, [](const Trig& x, const Trig& y) { return compare(x, y); });
}

int compare(const Expr& a, const Expr& b) {
  return compare_seq(a.terms(), b.terms(), [](const Term& x, const Term& y) {
    if (int c = compare(x.factors, y.factors); c != 0) return c;
    return cmp(x.coeff, y.coeff);
  });
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::vector<Term> normal;
  normal.reserve(terms.size());
  for (auto& t : terms) normalize_into(std::move(t), normal);
  std::sort(normal.begin(), normal.end(),
            [](const Term& a, const Term& b) { return compare(a.factors, b.factors) < 0; });
  Expr e;
  for (auto& t : normal) {
    if (!e.terms_.empty() && compare(e.terms_.back().factors, t.factors) == 0) {
      e.terms_.back().coeff += t.coeff;
      if (e.terms_.back().coeff == 0) e.terms_.pop_back();
    } else {
      e.terms_.push_back(std::move(t));
    }
  }
  return e;
}

Expr Expr::constant(const Rational& c) { return from_single(Term{c, {}}); }

Expr Expr::variable(int var) { return affine_power(var, 0, 1); }

Expr Expr::affine_power(int var, const Rational& shift, int exponent) {
  check_var(var);
  Term t{1, {}};
  add_power(t.factors, Affine{var, shift}, exponent);
  return from_single(std::move(t));
}

Expr Expr::pi(int power) {
  Term t{1, {}};
  t.factors.pi_power = power;
  return from_single(std::move(t));
}

Expr Expr::gamma_token(const Rational& arg, int power) {
  if (arg <= 0) throw Error(ErrorKind::DomainError, "Gamma token needs a positive argument, got " + to_string(arg));
  const long n = floor_long(arg);
  const Rational frac = arg - n;
  Term t{1, {}};
  if (frac == 0) {
    Rational fact = 1;
    for (long i = 2; i < n; ++i) fact *= i;
    t.coeff = pow(fact, power);
  } else {
    Rational rising = 1;
    for (long i = 0; i < n; ++i) rising *= frac + i;
    t.coeff = pow(rising, power);
    add_gamma(t.factors, frac, power);
  }
  return from_single(std::move(t));
}

Expr Expr::exp_of(const Expr& arg) {
  if (!arg.is_polynomial()) throw Error(ErrorKind::SchemaError, "exp() argument must be a polynomial: " + to_string(arg));
  if (arg.empty()) return constant(1);
  Term t{1, {}};
  t.factors.exp_arg = std::make_shared<const Expr>(arg);
  return from_single(std::move(t));
}

Expr Expr::trig(TrigKind kind, int var, const Rational& scale, bool times_pi, const Rational& shift) {
  check_var(var);
  if (scale == 0) return kind == TrigKind::Sin ? Expr{} : constant(1);
  Term t{1, {}};
  Trig g{kind, var, scale, times_pi, shift};
  if (scale < 0) {
    g.scale = -scale;
    if (kind == TrigKind::Sin) t.coeff = -1;
  }
  t.factors.trig.push_back(std::move(g));
  return from_single(std::move(t));
}

int Expr::max_var() const {
  int m = -1;
  for (const Term& t : terms_) {
    for (const auto& [aff, e] : t.factors.powers) m = std::max(m, aff.var);
    for (const Trig& g : t.factors.trig) m = std::max(m, g.var);
    if (t.factors.exp_arg) m = std::max(m, t.factors.exp_arg->max_var());
  }
  return m;
}

bool Expr::is_polynomial() const {
  for (const Term& t : terms_) {
    const Factors& f = t.factors;
    if (f.pi_power != 0 || !f.gamma.empty() || f.exp_arg || !f.trig.empty()) return false;
    for (const auto& [aff, e] : f.powers)
      if (e < 0) return false;
  }
  return true;
}

bool Expr::is_rational_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Factors& f = terms_.front().factors;
  return f.pi_power == 0 && f.gamma.empty() && f.powers.empty() && !f.exp_arg && f.trig.empty();
}

Expr add(const Expr& a, const Expr& b) {
  std::vector<Term> all;
  all.reserve(a.size() + b.size());
  all.insert(all.end(), a.terms().begin(), a.terms().end());
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return Expr::from_terms(std::move(all));
}

Expr mul(const Expr& a, const Expr& b) {
  std::vector<Term> all;
  all.reserve(a.size() * b.size());
  for (const Term& x : a.terms())
    for (const Term& y : b.terms()) all.push_back(multiply_terms(x, y));
  return Expr::from_terms(std::move(all));
}

Expr scale(const Expr& a, const Rational& c) {
  if (c == 0) return {};
  std::vector<Term> all = a.terms();
  for (Term& t : all) t.coeff *= c;
  return Expr::from_terms(std::move(all));
}

Expr neg(const Expr& a) { return scale(a, -1); }

Expr diff(const Expr& a, int var) {
  check_var(var);
  Expr result;
  for (const Term& t : a.terms()) result = add(result, diff_term(t, var));
  return result;
}

double eval(const Expr& a, std::span<const double> point) {
  double sum = 0.0;
  for (const Term& t : a.terms()) sum += eval_term(t, point);
  return sum;
}

std::vector<std::vector<double>> sample_points(const Expr& a, int dimension, std::size_t count) {
  const int d = std::max({dimension, a.max_var() + 1, 1});
  static constexpr unsigned kBases[kMaxDimension] = {2, 3, 5};
  std::vector<std::vector<double>> points;
  for (std::size_t index = 1; points.size() < count && index < 10000; ++index) {
    std::vector<double> x(d);
    for (int v = 0; v < d; ++v) x[v] = 0.1 + 0.8 * halton(index, kBases[v % kMaxDimension]);
    try {
      (void)eval(a, x);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleAtPoint) continue;
      throw;
    }
    points.push_back(std::move(x));
  }
  return points;
}

ZeroStatus is_zero(const Expr& a, Sampling sampling, int dimension) {
  if (a.empty()) return ZeroStatus::Zero;
  if (sampling == Sampling::Off) return ZeroStatus::NonZero;
  for (const auto& x : sample_points(a, dimension, 8)) {
    if (!(std::abs(eval(a, x)) < 1e-9)) return ZeroStatus::NonZero;
  }
  return ZeroStatus::NumericallyZero;
}

std::string to_string(const Expr& a) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : a.terms()) {
    const std::string factors = render_factors(t.factors);
    const bool negative = t.coeff < 0;
    const Rational mag = negative ? Rational(-t.coeff) : t.coeff;
    std::string body;
    if (factors.empty()) body = to_string(mag);
    else if (mag == 1) body = factors;
    else body = to_string(mag) + "*" + factors;
    if (first) out += negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace lrps
