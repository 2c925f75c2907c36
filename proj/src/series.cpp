#include "lrps/series.hpp"

#include <cmath>

#include "lrps/error.hpp"

namespace lrps {

namespace {

void accumulate_into(SeriesEntries& entries, const Rational& e, const Expr& c) {
  if (c.empty()) return;
  auto it = entries.find(e);
  if (it == entries.end()) {
    entries.emplace(e, c);
    return;
  }
  Expr sum = it->second + c;
  if (sum.empty()) entries.erase(it);
  else it->second = std::move(sum);
}

void check_compatible(int d1, const Rational& g1, int d2, const Rational& g2) {
  if (d1 != d2) throw Error(ErrorKind::DimensionError, "series dimensions differ");
  if (g1 != g2) throw Error(ErrorKind::GammaRangeError, "series fractional orders differ");
}

TimeSeries like(const TimeSeries& u) { return TimeSeries{u.dimension, u.gamma, {}}; }
LaplaceSeries like(const LaplaceSeries& v) { return LaplaceSeries{v.dimension, v.gamma, {}}; }

template <class S>
std::string render(const S& s, const char* var, bool negate) {
  if (s.entries.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : s.entries) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (e != 0 || negate) out += std::string("*") + var + "^" + (negate ? "-" : "") + "(" + to_string(e) + ")";
  }
  return out;
}

}  // namespace

std::string to_string(const FracExponent& e) {
  return "(" + to_string(e.a) + ")*gamma + (" + to_string(e.b) + ")";
}

void TimeSeries::accumulate(const Rational& e, const Expr& c) { accumulate_into(entries, e, c); }
void LaplaceSeries::accumulate(const Rational& e, const Expr& c) { accumulate_into(entries, e, c); }

namespace {
bool same_entries(const SeriesEntries& a, const SeriesEntries& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}
}  // namespace

bool operator==(const TimeSeries& a, const TimeSeries& b) {
  return a.dimension == b.dimension && a.gamma == b.gamma && same_entries(a.entries, b.entries);
}

bool operator==(const LaplaceSeries& a, const LaplaceSeries& b) {
  return a.dimension == b.dimension && a.gamma == b.gamma && same_entries(a.entries, b.entries);
}

TimeSeries ts_add(const TimeSeries& u, const TimeSeries& v) {
  check_compatible(u.dimension, u.gamma, v.dimension, v.gamma);
  TimeSeries out = u;
  for (const auto& [e, c] : v.entries) out.accumulate(e, c);
  return out;
}

TimeSeries ts_sub(const TimeSeries& u, const TimeSeries& v) { return ts_add(u, ts_scale(v, -1)); }

TimeSeries ts_scale(const TimeSeries& u, const Rational& c) {
  TimeSeries out = like(u);
  if (c == 0) return out;
  for (const auto& [e, x] : u.entries) out.entries.emplace(e, scale(x, c));
  return out;
}

TimeSeries ts_mul_expr(const TimeSeries& u, const Expr& c) {
  TimeSeries out = like(u);
  for (const auto& [e, x] : u.entries) out.accumulate(e, x * c);
  return out;
}

TimeSeries ts_product(const TimeSeries& u, const TimeSeries& v, const Rational& cutoff) {
  check_compatible(u.dimension, u.gamma, v.dimension, v.gamma);
  TimeSeries out = like(u);
  for (const auto& [e1, c1] : u.entries) {
    if (e1 > cutoff) break;
    for (const auto& [e2, c2] : v.entries) {
      Rational e = e1 + e2;
      if (e > cutoff) break;
      out.accumulate(e, c1 * c2);
    }
  }
  return out;
}

TimeSeries ts_diff(const TimeSeries& u, int var) {
  if (var < 0 || var >= u.dimension)
    throw Error(ErrorKind::DimensionError, "derivative in z" + std::to_string(var + 1) + " of a " +
                                               std::to_string(u.dimension) + "-dimensional series");
  TimeSeries out = like(u);
  for (const auto& [e, c] : u.entries) out.accumulate(e, diff(c, var));
  return out;
}

TimeSeries ts_truncate(const TimeSeries& u, const Rational& cutoff) {
  TimeSeries out = like(u);
  for (const auto& [e, c] : u.entries) {
    if (e > cutoff) break;
    out.entries.emplace(e, c);
  }
  return out;
}

TimeSeries caputo_ts(const TimeSeries& u) {
  TimeSeries out = like(u);
  for (const auto& [e, c] : u.entries) {
    if (e == 0) continue;
    if (e < u.gamma)
      throw Error(ErrorKind::UnsupportedExponent, "Caputo derivative of order " + to_string(u.gamma) +
                                                      " applied to tau^(" + to_string(e) + ")");
    Rational shifted = e + 1 - u.gamma;
    Expr factor = Expr::gamma_token(e + 1) * Expr::gamma_token(shifted, -1);
    out.accumulate(e - u.gamma, c * factor);
  }
  return out;
}

LaplaceSeries laplace_of(const TimeSeries& u) {
  LaplaceSeries out{u.dimension, u.gamma, {}};
  for (const auto& [e, c] : u.entries) {
    if (e < 0) throw Error(ErrorKind::UnsupportedExponent, "negative time exponent " + to_string(e));
    out.accumulate(e + 1, c * Expr::gamma_token(e + 1));
  }
  return out;
}

TimeSeries inverse_laplace(const LaplaceSeries& v) {
  TimeSeries out{v.dimension, v.gamma, {}};
  for (const auto& [e, c] : v.entries) {
    if (e < 1)
      throw Error(ErrorKind::UnsupportedExponent, "inverse transform of s^-(" + to_string(e) + ")");
    out.accumulate(e - 1, c * Expr::gamma_token(e, -1));
  }
  return out;
}

LaplaceSeries ls_add(const LaplaceSeries& u, const LaplaceSeries& v) {
  check_compatible(u.dimension, u.gamma, v.dimension, v.gamma);
  LaplaceSeries out = u;
  for (const auto& [e, c] : v.entries) out.accumulate(e, c);
  return out;
}

LaplaceSeries ls_sub(const LaplaceSeries& u, const LaplaceSeries& v) {
  check_compatible(u.dimension, u.gamma, v.dimension, v.gamma);
  LaplaceSeries out = u;
  for (const auto& [e, c] : v.entries) out.accumulate(e, -c);
  return out;
}

LaplaceSeries ls_shift(const LaplaceSeries& v, const Rational& by) {
  if (by < 0) throw Error(ErrorKind::UnsupportedExponent, "negative shift " + to_string(by));
  LaplaceSeries out = like(v);
  for (const auto& [e, c] : v.entries) out.entries.emplace(e + by, c);
  return out;
}

double eval(const TimeSeries& u, std::span<const double> point, double tau) {
  double sum = 0;
  for (const auto& [e, c] : u.entries) {
    const double t = e == 0 ? 1.0 : std::pow(tau, e.get_d());
    if (t == 0) continue;
    sum += eval(c, point) * t;
  }
  return sum;
}

P4Result p4_extract(const LaplaceSeries& lrf, int k) {
  P4Result r;
  const Rational target = Rational(k) * lrf.gamma + 1;
  Expr surviving;
  for (const auto& [e, c] : lrf.entries) {
    const int m = cmp(target, e);
    if (m < 0) {
      ++r.vanishing;
    } else if (m == 0) {
      ++r.surviving;
      surviving = surviving + c;
    } else {
      switch (is_zero(c, Sampling::On, lrf.dimension)) {
        case ZeroStatus::Zero:
          break;
        case ZeroStatus::NumericallyZero:
          ++r.numerically_zero;
          r.warnings.push_back("k=" + std::to_string(k) + ": entry at s^-(" + to_string(e) +
                               ") accepted as zero by sampling only: " + to_string(c));
          break;
        case ZeroStatus::NonZero:
          if (r.status == P4Status::Ok) {
            r.status = P4Status::DivergentLimit;
            r.divergent_exponent = e;
            r.divergent_coeff = c;
          }
          break;
      }
    }
  }
  r.solved = -surviving;
  return r;
}

std::string to_string(const TimeSeries& u) { return render(u, "tau", false); }
std::string to_string(const LaplaceSeries& v) { return render(v, "s", true); }

}  // namespace lrps
