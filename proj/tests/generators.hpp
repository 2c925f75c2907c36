#pragma once

#include <random>

#include "lrps/series.hpp"
#include "lrps/spatial_expr.hpp"

namespace gen {

inline lrps::Rational small_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return lrps::ratio(num(rng), den(rng));
}

inline lrps::Rational nonzero_rational(std::mt19937& rng) {
  lrps::Rational q;
  while (q == 0) q = small_rational(rng);
  return q;
}

// One factor drawn from every kind the normal form supports.
inline lrps::Expr factor(std::mt19937& rng, int dimension, bool transcendental) {
  std::uniform_int_distribution<int> var(0, dimension - 1);
  std::uniform_int_distribution<int> pick(0, transcendental ? 7 : 3);
  std::uniform_int_distribution<int> small(1, 3);
  const int v = var(rng);
  switch (pick(rng)) {
    case 0: return lrps::Expr::variable(v);
    case 1: return lrps::Expr::affine_power(v, small_rational(rng), small(rng));
    case 2: return lrps::Expr::affine_power(v, lrps::ratio(small(rng), 2), -small(rng));
    case 3: return lrps::Expr::constant(small_rational(rng));
    case 4: return lrps::Expr::exp_of(lrps::Expr::affine_power(v, lrps::Rational(-1, 2), 2));
    case 5: return lrps::Expr::trig(lrps::TrigKind::Sin, v, small(rng), true, 0);
    case 6: return lrps::Expr::trig(lrps::TrigKind::Cos, v, 1, true, lrps::Rational(1, small(rng)));
    default: return lrps::Expr::gamma_token(lrps::ratio(small(rng), 5) + small(rng), 1);
  }
}

inline lrps::Expr expr(std::mt19937& rng, int dimension, bool transcendental = true) {
  std::uniform_int_distribution<int> terms(1, 3), factors(1, 2);
  lrps::Expr sum;
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    lrps::Expr term = lrps::Expr::constant(nonzero_rational(rng));
    const int m = factors(rng);
    for (int f = 0; f < m; ++f) term = term * factor(rng, dimension, transcendental);
    sum = sum + term;
  }
  return sum;
}

inline lrps::Rational grid_gamma(std::mt19937& rng) {
  static const lrps::Rational choices[] = {lrps::Rational(1, 2), lrps::Rational(1, 3), lrps::Rational(2, 3),
                                           lrps::Rational(3, 4), lrps::Rational(2, 5), lrps::Rational(1)};
  return choices[std::uniform_int_distribution<int>(0, 5)(rng)];
}

// Up to `max_entries` entries on the k*gamma grid, k = 0..7.
inline lrps::TimeSeries grid_series(std::mt19937& rng, int dimension, const lrps::Rational& gamma,
                                    int max_entries = 6, bool transcendental = true) {
  lrps::TimeSeries u{dimension, gamma, {}};
  std::uniform_int_distribution<int> count(0, max_entries), k(0, 7);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) u.accumulate(lrps::Rational(k(rng)) * gamma, expr(rng, dimension, transcendental));
  while (static_cast<int>(u.entries.size()) > max_entries) u.entries.erase(std::prev(u.entries.end()));
  return u;
}

}  // namespace gen
