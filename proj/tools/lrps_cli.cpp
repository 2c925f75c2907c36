#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrps/lrps.h"

namespace {

struct ProblemArgs {
  std::string example;
  std::string problem_file;
  std::string gamma;
  int order = 0;
};

struct Owned {
  char* text = nullptr;
  ~Owned() { lrps_string_free(text); }
};

int report_failure(lrps_status s) {
  std::fprintf(stderr, "error: %s\n", lrps_last_error());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

bool parse_doubles(const std::string& s, std::vector<double>& out) {
  for (const auto& item : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

// "0.5,0.5;1,1" -> flat row-major; scalar points broadcast to the widest.
bool parse_points(const std::string& s, std::vector<double>& flat, std::size_t& dim) {
  std::vector<std::vector<double>> pts;
  dim = 0;
  for (const auto& p : split(s, ';')) {
    std::vector<double> v;
    if (!parse_doubles(p, v) || v.empty()) return false;
    dim = std::max(dim, v.size());
    pts.push_back(std::move(v));
  }
  for (auto& v : pts) {
    if (v.size() == 1) v.assign(dim, v.front());
    if (v.size() != dim) return false;
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return !pts.empty();
}

void add_problem_options(CLI::App* cmd, ProblemArgs& args) {
  auto* ex = cmd->add_option("--example", args.example, "built-in example id (1, 2, 4-8, s6a, s6b)");
  auto* pf = cmd->add_option("--problem", args.problem_file, "problem JSON file");
  ex->excludes(pf);
  cmd->add_option("--gamma", args.gamma, "fractional order, e.g. 3/4");
  cmd->add_option("--order", args.order, "truncation order K")->check(CLI::PositiveNumber);
}

int load(const ProblemArgs& args, lrps_problem** out) {
  lrps_status s;
  if (!args.problem_file.empty()) s = lrps_problem_from_file(args.problem_file.c_str(), out);
  else if (!args.example.empty()) s = lrps_problem_from_example(args.example.c_str(), out);
  else {
    std::fprintf(stderr, "error: one of --example or --problem is required\n");
    return LRPS_INVALID;
  }
  if (s != LRPS_OK) return report_failure(s);
  if (args.order > 0 && (s = lrps_problem_set_order(*out, args.order)) != LRPS_OK) return report_failure(s);
  if (!args.gamma.empty() && (s = lrps_problem_set_gamma(*out, args.gamma.c_str())) != LRPS_OK)
    return report_failure(s);
  return LRPS_OK;
}

struct ProblemHandle {
  lrps_problem* p = nullptr;
  ~ProblemHandle() { lrps_problem_free(p); }
};

int emit(lrps_status s, const Owned& text) {
  if (text.text) std::fputs(text.text, stdout);
  if (std::fflush(stdout) != 0) {
    std::fprintf(stderr, "error: cannot write output\n");
    return LRPS_IO;
  }
  if (s != LRPS_OK) return report_failure(s);
  return LRPS_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace residual power series solver for time-fractional Fokker-Planck equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lrps_version()));

  ProblemArgs pa;
  std::string format;
  std::string points;
  std::string times;
  std::string columns = "value,exact,abs_error,rel_error";
  std::string gammas;
  std::string orders = "4,6,8";

  auto* solve = app.add_subcommand("solve", "compute p_0..p_K");
  add_problem_options(solve, pa);
  solve->add_option("--format", format, "pretty or json");

  auto* table = app.add_subcommand("table", "values and errors against the closed form");
  add_problem_options(table, pa);
  table->add_option("--points", points, "points, e.g. \"0.5\" or \"0.5,0.5;1,1\"");
  table->add_option("--times", times, "comma-separated tau values");
  table->add_option("--columns", columns, "value,exact,abs_error,rel_error");
  table->add_option("--gammas", gammas, "comma-separated fractional orders");
  table->add_option("--format", format, "csv, json or pretty");

  auto* sweep = app.add_subcommand("order-sweep", "absolute errors for several truncation orders");
  add_problem_options(sweep, pa);
  sweep->add_option("--points", points, "points");
  sweep->add_option("--times", times, "tau values");
  sweep->add_option("--orders", orders, "comma-separated orders");
  sweep->add_option("--gammas", gammas, "fractional orders");
  sweep->add_option("--format", format, "csv, json or pretty");

  auto* residual = app.add_subcommand("residual-check", "time-domain residual of nu_K");
  add_problem_options(residual, pa);
  residual->add_option("--gammas", gammas, "fractional orders (default 1/2,3/4,1)");
  residual->add_option("--format", format, "csv, json or pretty");

  auto* examples = app.add_subcommand("examples", "list built-in problems");
  examples->add_option("--format", format, "csv, json or pretty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : LRPS_INVALID;
  }

  lrps_format fmt = LRPS_FORMAT_CSV;
  const auto pick_format = [&](const char* fallback) {
    const std::string name = format.empty() ? fallback : format;
    return lrps_parse_format(name.c_str(), &fmt);
  };

  if (examples->parsed()) {
    if (lrps_status s = pick_format("pretty"); s != LRPS_OK) return report_failure(s);
    Owned out;
    return emit(lrps_examples(fmt, &out.text), out);
  }

  ProblemHandle problem;
  if (int rc = load(pa, &problem.p); rc != LRPS_OK) return rc;

  if (solve->parsed()) {
    if (lrps_status s = pick_format("pretty"); s != LRPS_OK) return report_failure(s);
    lrps_solution* sol = nullptr;
    const lrps_status s = lrps_solve(problem.p, &sol);
    if (!sol) return report_failure(s);
    const std::string why = lrps_last_error();
    Owned out;
    const lrps_status r = lrps_solution_report(sol, fmt == LRPS_FORMAT_JSON ? LRPS_FORMAT_JSON : LRPS_FORMAT_PRETTY,
                                               &out.text);
    lrps_solution_free(sol);
    if (r != LRPS_OK) return report_failure(r);
    if (int rc = emit(LRPS_OK, out); rc != LRPS_OK) return rc;
    if (s != LRPS_OK) std::fprintf(stderr, "error: %s\n", why.c_str());
    return s;
  }

  std::vector<std::string> gamma_list = split(gammas, ',');
  std::vector<const char*> gamma_ptrs;
  for (const auto& g : gamma_list) gamma_ptrs.push_back(g.c_str());

  if (residual->parsed()) {
    if (lrps_status s = pick_format("pretty"); s != LRPS_OK) return report_failure(s);
    if (gamma_list.empty()) gamma_ptrs = {"1/2", "3/4", "1"};
    Owned out;
    return emit(lrps_run_residual_check(problem.p, gamma_ptrs.data(), gamma_ptrs.size(), fmt, &out.text), out);
  }

  if (lrps_status s = pick_format("csv"); s != LRPS_OK) return report_failure(s);
  const bool is_sweep = sweep->parsed();
  if (points.empty()) points = is_sweep ? "0.5;1" : "0.5";
  if (times.empty()) times = is_sweep ? "0.1,0.2,0.3,0.4,0.5" : "0.15,0.3,0.45,0.6,0.75,0.9";
  std::vector<double> flat, taus;
  std::size_t dim = 0;
  if (!parse_points(points, flat, dim)) {
    std::fprintf(stderr, "error: malformed --points '%s'\n", points.c_str());
    return LRPS_INVALID;
  }
  if (!parse_doubles(times, taus)) {
    std::fprintf(stderr, "error: malformed --times '%s'\n", times.c_str());
    return LRPS_INVALID;
  }
  lrps_table_spec spec{};
  spec.points = flat.data();
  spec.point_dim = dim;
  spec.point_count = flat.size() / dim;
  spec.times = taus.data();
  spec.time_count = taus.size();
  spec.gammas = gamma_ptrs.empty() ? nullptr : gamma_ptrs.data();
  spec.gamma_count = gamma_ptrs.size();

  Owned out;
  if (is_sweep) {
    std::vector<int> ks;
    for (const auto& k : split(orders, ',')) {
      try {
        ks.push_back(std::stoi(k));
      } catch (const std::exception&) {
        std::fprintf(stderr, "error: malformed --orders '%s'\n", orders.c_str());
        return LRPS_INVALID;
      }
    }
    spec.columns = LRPS_COLUMN_ABS_ERROR;
    return emit(lrps_run_order_sweep(problem.p, &spec, ks.data(), ks.size(), fmt, &out.text), out);
  }
  if (lrps_status s = lrps_parse_columns(columns.c_str(), &spec.columns); s != LRPS_OK) return report_failure(s);
  return emit(lrps_run_table(problem.p, &spec, fmt, &out.text), out);
}
