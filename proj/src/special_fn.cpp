#include "lrps/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "lrps/error.hpp"

namespace lrps {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_series(double xm1) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (xm1 + static_cast<double>(i));
  return a;
}

void check_domain(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::DomainError, "Gamma needs a finite positive argument, got " + std::to_string(x));
}

}  // namespace

double gamma_fn(double x) {
  check_domain(x);
  if (x == std::floor(x) && x <= 171.0) {
    double f = 1.0;
    for (double k = 2.0; k < x; k += 1.0) f *= k;
    return f;
  }
  if (x < 0.5) return gamma_fn(x + 1.0) / x;
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  // t^(xm1 + 1/2) split in two so large arguments do not overflow early.
  const double half = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_series(xm1);
}

double log_gamma(double x) {
  check_domain(x);
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_series(xm1));
}

double mittag_leffler(const MlParams& params, double x) {
  if (!(params.gamma_order > 0 && params.gamma_order <= 1))
    throw Error(ErrorKind::GammaRangeError, "Mittag-Leffler order must lie in (0, 1], got " + to_string(params.gamma_order));
  if (!(params.tol > 0.0)) throw Error(ErrorKind::DomainError, "tolerance must be positive");
  if (!(std::abs(x) <= 10.0)) throw Error(ErrorKind::DomainError, "Mittag-Leffler argument outside |x| <= 10");
  const double g = params.gamma_order.get_d();
  const double log_abs = x == 0.0 ? 0.0 : std::log(std::abs(x));
  double sum = 0.0;
  for (int n = 0; n < params.max_terms; ++n) {
    const double order = n * g + 1.0;
    double term;
    if (n == 0) {
      term = 1.0;
    } else if (x == 0.0) {
      term = 0.0;
    } else if (order <= 170.0 && n * std::abs(log_abs) < 600.0) {
      term = std::pow(x, n) / gamma_fn(order);
    } else {
      term = std::exp(n * log_abs - log_gamma(order));
      if (x < 0.0 && (n % 2 == 1)) term = -term;
    }
    sum += term;
    if (!std::isfinite(sum)) throw Error(ErrorKind::NoConvergence, "Mittag-Leffler partial sum overflowed");
    if (std::abs(term) < params.tol * std::max(1.0, std::abs(sum))) return sum;
  }
  throw Error(ErrorKind::NoConvergence, "Mittag-Leffler series did not reach tolerance in " +
                                            std::to_string(params.max_terms) + " terms");
}

std::string_view to_string(ExactKind kind) {
  switch (kind) {
    case ExactKind::AffinePlusPower: return "affine_plus_power";
    case ExactKind::CTimesMlPlus: return "c_times_ml_plus";
    case ExactKind::CTimesMlMinus: return "c_times_ml_minus";
    case ExactKind::MlShifted: return "ml_shifted";
  }
  return "unknown";
}

ExactKind parse_exact_kind(std::string_view name) {
  for (ExactKind k : {ExactKind::AffinePlusPower, ExactKind::CTimesMlPlus, ExactKind::CTimesMlMinus, ExactKind::MlShifted})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::UnknownKind, "unknown exact-solution kind '" + std::string(name) + "'");
}

double exact_reference(const ExactSolution& exact, std::span<const double> point, double tau, const Rational& gamma) {
  if (tau < 0.0) throw Error(ErrorKind::DomainError, "tau must be nonnegative");
  const double c = eval(exact.c, point);
  const double g = gamma.get_d();
  const double tg = std::pow(tau, g);
  const MlParams ml{gamma};
  switch (exact.kind) {
    case ExactKind::AffinePlusPower: return c + tg / gamma_fn(g + 1.0);
    case ExactKind::CTimesMlPlus:
    case ExactKind::MlShifted: return c * mittag_leffler(ml, tg);
    case ExactKind::CTimesMlMinus: return c * mittag_leffler(ml, -tg);
  }
  throw Error(ErrorKind::UnknownKind, "unhandled exact-solution kind");
}

}  // namespace lrps
