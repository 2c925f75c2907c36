#pragma once

// Independent numerical references. None of these call into the solver's
// special-function or series code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "lrps/fpe_model.hpp"
#include "lrps/series.hpp"

namespace oracle {

// Double-exponential quadrature on [a, b]. The integrand receives x together
// with the distances x - a and b - x, computed without cancellation, so
// endpoint power singularities can be evaluated accurately.
inline double tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double h = 1.0 / 128;
  double sum = 0;
  for (int k = -640; k <= 640; ++k) {
    const double t = k * h;
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = 0.5 * std::numbers::pi * std::cosh(t) / (cu * cu);
    // 1 - tanh(u) and 1 + tanh(u), stable for large |u|
    const double e2 = std::exp(-2 * std::fabs(u));
    const double small = 2 * e2 / (1 + e2);
    const double one_minus = u >= 0 ? small : 2 - small;
    const double one_plus = u >= 0 ? 2 - small : small;
    const double left = half * one_plus;
    const double right = half * one_minus;
    if (left <= 0 || right <= 0) continue;
    const double x = u >= 0 ? b - right : a + left;
    const double fx = f(x, left, right);
    if (!std::isfinite(fx)) continue;
    sum += w * fx;
  }
  return sum * half * h;
}

// Caputo derivative of order g in (0, 1) at tau of tau^e (e > 0) by
// quadrature of the defining integral of f'(rho) (tau - rho)^-g.
inline double caputo_power(double e, double g, double tau) {
  const double integral = tanh_sinh(
      [&](double, double rho, double dist) { return e * std::pow(rho, e - 1) * std::pow(dist, -g); }, 0, tau);
  return integral / std::tgamma(1 - g);
}

// E_{1/2}(x) = exp(x^2) erfc(-x), with erfc(-x) = 1 + 2/sqrt(pi) int_0^x exp(-t^2).
inline double ml_half_via_erfc(double x) {
  const double erf_x = 2 / std::sqrt(std::numbers::pi) *
                       tanh_sinh([](double t, double, double) { return std::exp(-t * t); }, 0, x);
  return std::exp(x * x) * (1 + erf_x);
}

// Cauchy product by explicit double loop and linear merge.
inline std::vector<std::pair<lrps::Rational, lrps::Expr>> brute_convolution(const lrps::TimeSeries& u,
                                                                             const lrps::TimeSeries& v,
                                                                             const lrps::Rational& cutoff) {
  std::vector<std::pair<lrps::Rational, lrps::Expr>> acc;
  for (const auto& [e1, c1] : u.entries)
    for (const auto& [e2, c2] : v.entries) {
      lrps::Rational e = e1 + e2;
      if (e > cutoff) continue;
      bool merged = false;
      for (auto& [ea, ca] : acc)
        if (ea == e) {
          ca = ca + c1 * c2;
          merged = true;
        }
      if (!merged) acc.emplace_back(e, c1 * c2);
    }
  std::vector<std::pair<lrps::Rational, lrps::Expr>> out;
  for (auto& p : acc)
    if (!p.second.empty()) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// The Fokker-Planck operator by central differences of a pointwise density.
inline double fd_operator(const lrps::FpeProblem& p, const std::function<double(const std::vector<double>&)>& nu,
                          const std::vector<double>& x, double h) {
  const int d = p.dimension;
  const auto flux = [&](const lrps::FluxTerm& f, const std::vector<double>& y) {
    const double u = nu(y);
    double v = 0;
    if (!f.linear.empty()) v += lrps::eval(f.linear, y) * u;
    if (!f.quadratic.empty()) v += lrps::eval(f.quadratic, y) * u * u;
    return v;
  };
  const auto shifted = [&](std::vector<double> y, int i, double di, int j, double dj) {
    y[i] += di;
    y[j] += dj;
    return y;
  };
  double total = 0;
  for (int i = 0; i < d; ++i) {
    const auto& f = p.drift[i];
    if (f.absent()) continue;
    total -= (flux(f, shifted(x, i, h, i, 0)) - flux(f, shifted(x, i, -h, i, 0))) / (2 * h);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& f = p.diffusion[i][j];
      if (f.absent()) continue;
      if (i == j) {
        total += (flux(f, shifted(x, i, h, i, 0)) - 2 * flux(f, x) + flux(f, shifted(x, i, -h, i, 0))) / (h * h);
      } else {
        total += (flux(f, shifted(x, i, h, j, h)) - flux(f, shifted(x, i, h, j, -h)) -
                  flux(f, shifted(x, i, -h, j, h)) + flux(f, shifted(x, i, -h, j, -h))) /
                 (4 * h * h);
      }
    }
  return total;
}

}  // namespace oracle
