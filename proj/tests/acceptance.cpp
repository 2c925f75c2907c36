// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "lrps/engine.hpp"
#include "lrps/error.hpp"
#include "lrps/report.hpp"
#include "lrps/special_fn.hpp"
#include "oracles.hpp"

using namespace lrps;

namespace {

int failures = 0;

void verdict(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Expr z(int i) { return Expr::variable(i); }

const Rational kGammas[] = {Rational(1, 2), Rational(3, 4), Rational(1)};

void ac1() {
  struct Family {
    const char* id;
    Expr c;
    int ratio;  // p_k = c * ratio^k; 0 means p_1 = 1 and p_k = 0 beyond
  };
  const Family families[] = {{"1", z(0), 0},         {"2", z(0), 1}, {"4", z(0), 1},
                             {"5", z(0), 1},         {"6", z(0) * z(0), -1}, {"7", z(2), 1},
                             {"8", Expr::affine_power(2, -1, 2), 1}};
  int bad = 0, runs = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& f : families)
    for (const Rational& g : kGammas) {
      ++runs;
      const SolveResult r = solve(builtin_example(f.id, g, 8));
      const auto& p = r.solution.coeffs;
      bool ok = p.size() == 9 && p[0] == f.c;
      Rational rk = f.ratio;
      for (int k = 1; ok && k <= 8; ++k, rk *= f.ratio) {
        const Expr want = f.ratio == 0 ? (k == 1 ? Expr::constant(1) : Expr()) : scale(f.c, rk);
        ok = p[k] == want;
      }
      if (!ok) {
        ++bad;
        std::printf("  example %s at gamma %s: coefficients differ\n", f.id, to_string(g).c_str());
      }
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  verdict("AC1", bad == 0 && secs < 5,
          std::to_string(runs - bad) + "/" + std::to_string(runs) + " families recovered, " + fmt("%.2f s", secs));
}

void ac2() {
  struct Row {
    double zeta, tau, value;
    int decimals;
  };
  const Row rows[] = {{0.25, 0.01, 0.2525125417, 10}, {0.50, 0.01, 0.5050250833, 10},
                      {0.75, 0.01, 0.7575376250, 10}, {1.00, 0.01, 1.010050167, 9},
                      {0.25, 0.6, 0.45400000000, 11}, {0.50, 0.6, 0.90800000000, 11},
                      {0.75, 0.6, 1.36200000000, 11}, {1.00, 0.6, 1.81600000000, 11}};
  const SolveResult r = solve(builtin_example("2", 1, 3));
  int ok = 0;
  for (const auto& row : rows) {
    const std::vector<double> x{row.zeta};
    const double v = evaluate(r.solution, x, row.tau);
    if (std::fabs(v - row.value) <= 0.5 * std::pow(10.0, -row.decimals)) ++ok;
    else std::printf("  (%g, %g): %.12f vs %.12f\n", row.zeta, row.tau, v, row.value);
  }
  verdict("AC2", ok == 8, std::to_string(ok) + "/8 three-term values of Example 2 match to the printed digits");
}

bool within(double got, double ref) {
  if (ref >= 1e-10) return std::fabs(got - ref) <= 0.01 * ref;
  return got >= ref / 2 && got <= ref * 2;
}

// Compares the last `refs` columns of every row.
int compare_table(const Table& t, const std::vector<std::vector<double>>& refs, const char* label) {
  int bad = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto& row = t.rows.at(i);
    for (std::size_t j = 0; j < refs[i].size(); ++j) {
      const double got = std::get<double>(row.at(row.size() - refs[i].size() + j));
      if (!within(got, refs[i][j])) {
        ++bad;
        std::printf("  %s row %zu col %zu: %.4e vs %.4e\n", label, i, j, got, refs[i][j]);
      }
    }
  }
  return bad;
}

void ac3() {
  const std::vector<double> errors_times{0.15, 0.30, 0.45, 0.60, 0.75, 0.90};
  const std::vector<double> sweep_times{0.1, 0.2, 0.3, 0.4, 0.5};
  struct Case {
    const char* id;
    double error_point;
    std::vector<double> errors;
    std::vector<double> sweep_points;
    std::vector<std::vector<double>> sweep;  // per point, per tau: K = 4, 6, 8
  };
  const Case cases[] = {
      {"2",
       0.5,
       {5.373e-14, 2.795e-11, 1.091e-09, 1.476e-08, 1.117e-07, 5.861e-07},
       {0.5, 1.0},
       {{4.237e-08, 1.005e-11, 1.554e-15},
        {1.379e-06, 1.302e-09, 7.199e-13},
        {1.065e-05, 2.254e-08, 2.796e-11},
        {4.568e-05, 1.710e-07, 3.762e-10},
        {1.419e-04, 8.263e-07, 2.832e-09},
        {8.474e-08, 2.009e-11, 3.109e-15},
        {2.758e-06, 2.605e-09, 1.440e-12},
        {2.131e-05, 4.508e-08, 5.591e-11},
        {9.136e-05, 3.421e-07, 7.524e-10},
        {2.838e-04, 1.653e-06, 5.664e-09}}},
      {"6",
       0.5,
       {2.609e-14, 1.316e-11, 4.987e-10, 6.547e-09, 4.809e-08, 2.447e-07},
       {0.5, 1.0},
       {{2.049e-08, 4.899e-12, 7.216e-16},
        {6.451e-07, 6.194e-10, 3.458e-13},
        {4.820e-06, 1.045e-08, 1.316e-11},
        {1.999e-05, 7.738e-08, 1.736e-10},
        {6.004e-05, 3.646e-07, 1.281e-09},
        {8.196e-08, 1.960e-11, 2.887e-15},
        {2.580e-06, 2.478e-09, 1.383e-12},
        {1.928e-05, 4.182e-08, 5.266e-11},
        {7.995e-05, 3.095e-07, 6.945e-10},
        {2.402e-04, 1.458e-06, 5.125e-09}}},
      {"8",
       0.5,
       {2.692e-14, 1.397e-11, 5.457e-10, 7.383e-09, 5.589e-08, 2.930e-07},
       {0.5, 0.75},
       {{2.119e-08, 5.023e-12, 7.772e-16},
        {6.895e-07, 6.512e-10, 3.599e-13},
        {5.327e-06, 1.127e-08, 1.398e-11},
        {2.284e-05, 8.552e-08, 1.881e-10},
        {7.094e-05, 4.132e-07, 1.416e-09},
        {5.296e-09, 1.256e-12, 1.943e-16},
        {1.724e-07, 1.628e-10, 8.998e-14},
        {1.332e-06, 2.817e-09, 3.495e-12},
        {5.710e-06, 2.138e-08, 4.702e-11},
        {1.774e-05, 1.033e-07, 3.540e-10}}},
  };
  int bad = 0, checked = 0;
  for (const auto& c : cases) {
    const FpeProblem p = builtin_example(c.id, 1, 8);
    TableSpec spec;
    spec.points = {{c.error_point}};
    spec.times = errors_times;
    spec.columns = kColumnAbsError;
    std::vector<std::vector<double>> refs;
    for (double e : c.errors) refs.push_back({e});
    bad += compare_table(run_table(p, spec), refs, c.id);
    checked += static_cast<int>(c.errors.size());

    TableSpec sweep;
    for (double v : c.sweep_points) sweep.points.push_back({v});
    sweep.times = sweep_times;
    bad += compare_table(run_order_sweep(p, sweep, {4, 6, 8}), c.sweep, c.id);
    checked += static_cast<int>(c.sweep.size() * 3);
  }
  verdict("AC3", bad == 0,
          std::to_string(checked - bad) + "/" + std::to_string(checked) +
              " error entries for Examples 2, 6, 8 within tolerance");
}

void ac4() {
  const Expr sin_pi = Expr::trig(TrigKind::Sin, 0, 1, true, 0);
  const Expr two_sin = scale(sin_pi, 2);
  std::vector<std::string> problems;
  for (Rational g : {Rational(1, 2), Rational(4, 5), Rational(1)}) {
    const SolveResult r = solve(builtin_example("s6a", g));
    bool ok = r.report.outcome == Outcome::Completed && r.solution.coeffs.size() == 9;
    for (const Expr& p : r.solution.coeffs) ok = ok && p == z(0) + Expr::constant(2);
    if (!ok) problems.push_back("s6a at " + to_string(g));
  }
  for (Rational g : {Rational(7, 10), Rational(4, 5), Rational(9, 10)}) {
    const SolveResult r = solve(builtin_example("s6b", g));
    if (r.report.outcome != Outcome::Inapplicable || r.report.witness_k != 3)
      problems.push_back("s6b at " + to_string(g));
  }
  const SolveResult t = solve(builtin_example("s6b", Rational(2, 3)));
  if (t.solution.coeffs.size() < 4 || t.solution.coeffs[3] != two_sin) problems.push_back("s6b p3 at 2/3");
  const SolveResult one = solve(builtin_example("s6b", 1));
  if (one.solution.coeffs.size() < 3 || one.solution.coeffs[2] != two_sin) problems.push_back("s6b p2 at 1");
  std::string detail = "control problems: s6a family, s6b witness k = 3, p3 and p2 = 2 sin(pi z1)";
  for (const auto& s : problems) detail += "; wrong: " + s;
  verdict("AC4", problems.empty(), detail);
}

void ac5() {
  int bad = 0, runs = 0, inapplicable = 0;
  double worst = 0;
  for (const auto& info : example_catalog()) {
    const FpeProblem p = builtin_example(info.id);
    for (const ResidualEntry& e : residual_check(p, {std::begin(kGammas), std::end(kGammas)})) {
      ++runs;
      if (e.outcome == Outcome::Inapplicable) {
        // the limit diverges, so no series exists to check
        ++inapplicable;
        std::printf("  example %s at gamma %s: inapplicable at k = %d\n", info.id.c_str(),
                    to_string(e.gamma).c_str(), e.witness_k);
        if (info.id != "s6b") ++bad;
        continue;
      }
      worst = std::max(worst, e.max_abs_residual());
      if (!e.structural_zero || e.samples.size() != 5 || !(e.max_abs_residual() < 1e-9)) {
        ++bad;
        std::printf("  example %s at gamma %s: residual %.3e structural %d\n", info.id.c_str(),
                    to_string(e.gamma).c_str(), e.max_abs_residual(), e.structural_zero);
      }
    }
  }
  verdict("AC5", bad == 0,
          std::to_string(runs - inapplicable - bad) + "/" + std::to_string(runs - inapplicable) +
              " solvable runs with zero structural residual" + fmt(", max |R| %.2e", worst) + ", " +
              std::to_string(inapplicable) + " inapplicable");
}

void ac6() {
  std::mt19937 rng(20240611);
  int laplace = 0, round_trip = 0, product = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const int d = 1 + i % 3;
    const Rational g = gen::grid_gamma(rng);
    const TimeSeries u = gen::grid_series(rng, d, g);
    LaplaceSeries rhs = laplace_of(u);
    const auto c0 = u.entries.find(Rational(0));
    if (c0 != u.entries.end()) rhs.accumulate(Rational(1), -c0->second);
    if (ls_shift(laplace_of(caputo_ts(u)), g) == rhs) ++laplace;
    if (inverse_laplace(laplace_of(u)) == u) ++round_trip;
  }
  for (int i = 0; i < n; ++i) {
    const int d = 1 + i % 3;
    const Rational g = gen::grid_gamma(rng);
    const TimeSeries u = gen::grid_series(rng, d, g), v = gen::grid_series(rng, d, g);
    const Rational cutoff = Rational(1 + i % 8) * g;
    const auto expected = oracle::brute_convolution(u, v, cutoff);
    const TimeSeries got = ts_product(u, v, cutoff);
    bool same = got.entries.size() == expected.size();
    std::size_t j = 0;
    for (auto it = got.entries.begin(); same && it != got.entries.end(); ++it, ++j)
      same = it->first == expected[j].first && it->second == expected[j].second;
    if (same) ++product;
  }
  verdict("AC6", laplace == n && round_trip == n && product == n,
          "Laplace of Caputo " + std::to_string(laplace) + "/200, round trip " + std::to_string(round_trip) +
              "/200, product " + std::to_string(product) + "/200");
}

void ac7() {
  double e1 = 0;
  MlParams one;
  one.gamma_order = 1;
  for (int i = 0; i <= 20; ++i) {
    const double x = -1 + 0.1 * i;
    e1 = std::max(e1, std::fabs(mittag_leffler(one, x) / std::exp(x) - 1));
  }
  MlParams half;
  half.gamma_order = Rational(1, 2);
  const double ml = mittag_leffler(half, 1.0);
  const double ref = oracle::ml_half_via_erfc(1.0);
  const double e_half = std::fabs(ml - ref);
  double rec = 0;
  for (double x = 0.5; x <= 20.0; x += 0.125) rec = std::max(rec, std::fabs(gamma_fn(x + 1) / (x * gamma_fn(x)) - 1));
  verdict("AC7", e1 <= 1e-12 && e_half <= 1e-10 && rec <= 1e-12,
          fmt("E_1 vs exp rel %.1e, E_1/2(1) vs erfc oracle %.1e, ", e1, e_half) +
              fmt("Gamma recurrence rel %.1e", rec));
}

template <class F>
void guarded(const char* id, F f) {
  try {
    f();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("threw ") + e.what());
  }
}

}  // namespace

int main() {
  guarded("AC1", ac1);
  guarded("AC2", ac2);
  guarded("AC3", ac3);
  guarded("AC4", ac4);
  guarded("AC5", ac5);
  guarded("AC6", ac6);
  guarded("AC7", ac7);
  return failures == 0 ? 0 : 1;
}
