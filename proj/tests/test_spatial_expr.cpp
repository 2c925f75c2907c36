#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "lrps/error.hpp"
#include "lrps/expr_parser.hpp"
#include "lrps/spatial_expr.hpp"

using namespace lrps;

namespace {
Expr z(int i) { return Expr::variable(i); }
Expr k(long n, long d = 1) { return Expr::constant(ratio(n, d)); }
Expr shifted_exp() { return Expr::exp_of(Expr::affine_power(0, Rational(-1, 2), 2)); }
Expr sin_pi(int v = 0) { return Expr::trig(TrigKind::Sin, v, 1, true, 0); }
Expr cos_pi(int v = 0) { return Expr::trig(TrigKind::Cos, v, 1, true, 0); }
}  // namespace

TEST_CASE("add merges like terms and deletes zeros") {
  CHECK((z(0) + -z(0)).empty());
  CHECK(z(0) * z(0) + z(0) * z(0) == k(2) * z(0) * z(0));
  const Expr a = Expr::affine_power(0, Rational(-1, 2), 1) * shifted_exp();
  const Expr sum = k(2) * a + k(3) * a;
  CHECK(sum == k(5) * a);
  CHECK(sum.size() == 2);  // (z-1/2) expands to z - 1/2
}

TEST_CASE("mul adds exponents and keeps trig factors as a multiset") {
  const Expr sq = Expr::affine_power(2, -1, 2);
  const Expr inv = k(2) * Expr::affine_power(2, -1, -1);
  CHECK(sq * inv == k(2) * Expr::affine_power(2, -1, 1));
  CHECK(z(0) * z(0) == Expr::affine_power(0, 0, 2));
  const Expr s2 = sin_pi() * sin_pi();
  REQUIRE(s2.size() == 1);
  CHECK(s2.terms().front().factors.trig.size() == 2);
  CHECK(s2 != sin_pi());
}

TEST_CASE("exponential arguments add") {
  const Expr a = Expr::exp_of(z(0));
  const Expr b = Expr::exp_of(z(0) * z(0));
  CHECK(a * b == Expr::exp_of(z(0) + z(0) * z(0)));
  CHECK(Expr::exp_of(z(0)) * Expr::exp_of(-z(0)) == k(1));
  CHECK_THROWS_AS(Expr::exp_of(sin_pi()), Error);
}

TEST_CASE("partial fractions give a canonical form for products of poles") {
  const Expr a = Expr::affine_power(0, 0, -1);
  const Expr b = Expr::affine_power(0, 1, -1);
  CHECK(a * b == a - b);
  // z / (z + 1) = 1 - 1/(z + 1)
  CHECK(z(0) * b == k(1) - b);
  CHECK(Expr::affine_power(0, 1, 1) * b == k(1));
}

TEST_CASE("gamma tokens reduce to the unit interval and cancel") {
  CHECK(Expr::gamma_token(Rational(7, 2)) == k(15, 8) * Expr::gamma_token(Rational(1, 2)));
  CHECK(Expr::gamma_token(5) == k(24));
  CHECK(Expr::gamma_token(Rational(9, 5)) * Expr::gamma_token(Rational(9, 5), -1) == k(1));
  CHECK(Expr::gamma_token(Rational(1, 2), 2) == Expr::pi());
}

TEST_CASE("diff follows the product and chain rules") {
  CHECK(diff(z(0) * z(0), 0) == k(2) * z(0));
  CHECK(diff(shifted_exp(), 0) == k(2) * Expr::affine_power(0, Rational(-1, 2), 1) * shifted_exp());
  CHECK(diff(sin_pi(), 0) == Expr::pi() * cos_pi());
  CHECK(diff(cos_pi(), 0) == -(Expr::pi() * sin_pi()));
  CHECK(diff(Expr::affine_power(2, -1, -1), 2) == -Expr::affine_power(2, -1, -2));
  CHECK(diff(z(0) * z(1), 2).empty());
}

TEST_CASE("eval at points and poles") {
  const std::vector<double> half{0.5};
  CHECK(eval(z(0) * z(0), half) == doctest::Approx(0.25));
  const std::vector<double> p3{0.2, 0.3, 1.0};
  CHECK_THROWS_WITH_AS(eval(k(2) * Expr::affine_power(2, -1, -1), p3), doctest::Contains("PoleAtPoint"), Error);
  const std::vector<double> x{1.5};
  CHECK(eval(Expr::affine_power(0, Rational(-1, 2), 1) * shifted_exp(), x) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(eval(Expr::gamma_token(Rational(1, 2)), half) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK_THROWS_AS(eval(z(2), half), Error);
}

TEST_CASE("is_zero distinguishes structural and sampled zeros") {
  CHECK(is_zero(z(0) - z(0), Sampling::On, 1) == ZeroStatus::Zero);
  CHECK(is_zero(z(0) * z(0), Sampling::On, 1) == ZeroStatus::NonZero);
  CHECK(is_zero(z(0) * z(0), Sampling::Off, 1) == ZeroStatus::NonZero);
  // sin(2 pi z) - 2 sin(pi z) cos(pi z) is not reduced structurally
  const Expr identity = Expr::trig(TrigKind::Sin, 0, 2, true, 0) - k(2) * sin_pi() * cos_pi();
  CHECK_FALSE(identity.empty());
  CHECK(is_zero(identity, Sampling::On, 1) == ZeroStatus::NumericallyZero);
  CHECK(is_zero(identity, Sampling::Off, 1) == ZeroStatus::NonZero);
}

TEST_CASE("sample points lie in the unit box and avoid poles") {
  const Expr pole = Expr::affine_power(0, Rational(-1, 2), -1);
  const auto pts = sample_points(pole, 2, 8);
  REQUIRE(pts.size() == 8);
  for (const auto& p : pts) {
    CHECK(p.size() == 2);
    for (double x : p) CHECK((x >= 0.1 && x <= 0.9));
    CHECK(p[0] != 0.5);
  }
}

TEST_CASE("rendering round-trips through the parser") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Expr e = gen::expr(rng, 3);
    CAPTURE(to_string(e));
    CHECK(parse_expr(to_string(e), 3) == e);
  }
  CHECK(to_string(Expr{}) == "0");
  CHECK(to_string(Expr::affine_power(2, -1, -1)) == "(z3-1)^-1");
}
