#include "lrps/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "lrps/error.hpp"

namespace lrps {

namespace {

std::vector<double> broadcast(const std::vector<double>& p, int d) {
  if (p.size() == 1) return std::vector<double>(d, p.front());
  if (static_cast<int>(p.size()) != d)
    throw Error(ErrorKind::DimensionError, "point has " + std::to_string(p.size()) + " coordinates, problem has " +
                                               std::to_string(d));
  return p;
}

void check_spec(const TableSpec& spec) {
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    if (!(spec.times[i] >= 0)) throw Error(ErrorKind::DomainError, "times must be nonnegative");
    if (i > 0 && spec.times[i] < spec.times[i - 1]) throw Error(ErrorKind::DomainError, "times must be nondecreasing");
  }
  for (const auto& g : spec.gammas) validate_gamma(g);
}

std::vector<Rational> gammas_for(const FpeProblem& problem, const TableSpec& spec) {
  if (spec.gammas.empty()) return {problem.gamma};
  return spec.gammas;
}

SolveResult solve_for(const FpeProblem& problem, const Rational& gamma, std::optional<int> order = std::nullopt) {
  FpeProblem p = with_gamma(problem, gamma);
  if (order) p = with_order(p, *order);
  return solve_checked(p);
}

void point_header(Table& t, int d) {
  t.header.push_back("gamma");
  for (int i = 0; i < d; ++i) t.header.push_back("z" + std::to_string(i + 1));
  t.header.push_back("tau");
}

std::vector<Cell> row_prefix(const Rational& gamma, const std::vector<double>& point, double tau) {
  std::vector<Cell> row{to_string(gamma)};
  for (double x : point) row.emplace_back(x);
  row.emplace_back(tau);
  return row;
}

double exact_at(const FpeProblem& problem, const std::vector<double>& point, double tau, const Rational& gamma) {
  return exact_reference(*problem.exact, point, tau, gamma);
}

}  // namespace

std::uint32_t parse_columns(std::string_view list) {
  std::uint32_t mask = 0;
  std::stringstream ss{std::string(list)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "value") mask |= kColumnValue;
    else if (item == "exact") mask |= kColumnExact;
    else if (item == "abs_error") mask |= kColumnAbsError;
    else if (item == "rel_error") mask |= kColumnRelError;
    else throw Error(ErrorKind::SchemaError, "unknown column '" + item + "'");
  }
  if (mask == 0) throw Error(ErrorKind::SchemaError, "no columns requested");
  return mask;
}

Table run_table(const FpeProblem& problem, const TableSpec& spec) {
  check_spec(spec);
  const std::uint32_t needs_exact = kColumnExact | kColumnAbsError | kColumnRelError;
  if ((spec.columns & needs_exact) && !problem.exact)
    throw Error(ErrorKind::ExactUnavailable, "problem has no closed-form reference; request only the value column");
  Table t;
  const int d = problem.dimension;
  point_header(t, d);
  if (spec.columns & kColumnValue) t.header.push_back("value");
  if (spec.columns & kColumnExact) t.header.push_back("exact");
  if (spec.columns & kColumnAbsError) t.header.push_back("abs_error");
  if (spec.columns & kColumnRelError) t.header.push_back("rel_error");

  for (const Rational& g : gammas_for(problem, spec)) {
    const SolveResult r = solve_for(problem, g);
    for (const auto& raw : spec.points) {
      const std::vector<double> point = broadcast(raw, d);
      for (double tau : spec.times) {
        std::vector<Cell> row = row_prefix(g, point, tau);
        const double value = evaluate(r.solution, point, tau);
        double exact = 0;
        if (spec.columns & needs_exact) exact = exact_at(problem, point, tau, g);
        const double abs_error = std::fabs(exact - value);
        if (spec.columns & kColumnValue) row.emplace_back(value);
        if (spec.columns & kColumnExact) row.emplace_back(exact);
        if (spec.columns & kColumnAbsError) row.emplace_back(abs_error);
        if (spec.columns & kColumnRelError) {
          if (exact == 0)
            throw Error(ErrorKind::DivisionByZeroExact, "relative error undefined where the exact value is 0 (tau = " +
                                                            format_number(tau) + ")");
          row.emplace_back(abs_error / std::fabs(exact));
        }
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

Table run_order_sweep(const FpeProblem& problem, const TableSpec& spec, const std::vector<int>& orders) {
  check_spec(spec);
  if (orders.empty()) throw Error(ErrorKind::SchemaError, "order list is empty");
  if (!problem.exact) throw Error(ErrorKind::ExactUnavailable, "order sweep needs a closed-form reference");
  Table t;
  const int d = problem.dimension;
  point_header(t, d);
  for (int k : orders) t.header.push_back("abs_error_K" + std::to_string(k));
  for (const Rational& g : gammas_for(problem, spec)) {
    std::vector<SolveResult> runs;
    for (int k : orders) runs.push_back(solve_for(problem, g, k));
    for (const auto& raw : spec.points) {
      const std::vector<double> point = broadcast(raw, d);
      for (double tau : spec.times) {
        std::vector<Cell> row = row_prefix(g, point, tau);
        const double exact = exact_at(problem, point, tau, g);
        for (const auto& r : runs) row.emplace_back(std::fabs(exact - evaluate(r.solution, point, tau)));
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

double ResidualEntry::max_abs_residual() const {
  double m = 0;
  for (const auto& s : samples) m = std::max(m, std::fabs(s.residual));
  return m;
}

std::vector<ResidualSample> residual_sample_pairs(int dimension) {
  static const double coords[] = {0.3, 0.45, 0.6, 0.7, 0.85};
  static const double taus[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<ResidualSample> out;
  for (int n = 0; n < 5; ++n) {
    ResidualSample s;
    for (int i = 0; i < dimension; ++i) s.point.push_back(coords[(n + 2 * i) % 5]);
    s.tau = taus[n];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ResidualEntry> residual_check(const FpeProblem& problem, const std::vector<Rational>& gammas) {
  std::vector<ResidualEntry> out;
  for (const Rational& g : gammas.empty() ? std::vector<Rational>{problem.gamma} : gammas) {
    ResidualEntry e;
    e.gamma = g;
    const SolveResult r = solve(with_gamma(problem, g));
    e.outcome = r.report.outcome;
    if (e.outcome == Outcome::Inapplicable) {
      e.witness_k = r.report.witness_k;
      out.push_back(std::move(e));
      continue;
    }
    e.structural_zero = structural_residual(r.solution).zero;
    e.samples = residual_sample_pairs(problem.dimension);
    for (auto& s : e.samples) s.residual = numeric_residual(r.solution, s.point, s.tau);
    out.push_back(std::move(e));
  }
  return out;
}

Table residual_table(const std::vector<ResidualEntry>& entries) {
  Table t;
  t.header = {"gamma", "outcome", "witness_k", "structural", "max_abs_residual"};
  for (const auto& e : entries) {
    std::vector<Cell> row{to_string(e.gamma), std::string(to_string(e.outcome))};
    row.emplace_back(static_cast<long long>(e.witness_k));
    if (e.outcome == Outcome::Inapplicable) {
      row.emplace_back(std::string("n/a"));
      row.emplace_back(std::string("n/a"));
    } else {
      row.emplace_back(std::string(e.structural_zero ? "zero" : "nonzero"));
      row.emplace_back(e.max_abs_residual());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "pretty") return Format::Pretty;
  throw Error(ErrorKind::SchemaError, "unknown format '" + std::string(name) + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", x);
  std::string s(buf);
  const auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  const int exponent = std::stoi(s.substr(epos + 1));
  return mant + "e" + std::to_string(exponent);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const long long* n = std::get_if<long long>(&c)) return std::to_string(*n);
  return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void emit(const Table& table, Format format, std::ostream& out) {
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << csv_escape(table.header[i]);
      out << "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
        out << "\n";
      }
      break;
    }
    case Format::Json: {
      nlohmann::ordered_json doc;
      doc["columns"] = table.header;
      doc["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
          if (const double* d = std::get_if<double>(&c)) {
            if (std::isfinite(*d)) r.push_back(*d);
            else r.push_back(nullptr);
          } else if (const long long* n = std::get_if<long long>(&c)) {
            r.push_back(*n);
          } else {
            r.push_back(std::get<std::string>(c));
          }
        }
        doc["rows"].push_back(std::move(r));
      }
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::Pretty: {
      std::vector<std::size_t> width(table.header.size());
      std::vector<std::vector<std::string>> text;
      std::vector<bool> numeric(table.header.size(), false);
      for (std::size_t i = 0; i < table.header.size(); ++i) width[i] = table.header[i].size();
      for (const auto& row : table.rows) {
        std::vector<std::string> cells;
        for (std::size_t i = 0; i < row.size(); ++i) {
          std::string s;
          if (const double* d = std::get_if<double>(&row[i])) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.10g", *d);
            s = buf;
            if (i < numeric.size()) numeric[i] = true;
          } else {
            if (i < numeric.size() && std::holds_alternative<long long>(row[i])) numeric[i] = true;
            s = cell_text(row[i]);
          }
          if (i < width.size()) width[i] = std::max(width[i], s.size());
          cells.push_back(std::move(s));
        }
        text.push_back(std::move(cells));
      }
      const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) out << "  ";
          const std::string pad(width[i] - std::min(width[i], cells[i].size()), ' ');
          if (numeric[i]) out << pad << cells[i];
          else out << cells[i] << (i + 1 < cells.size() ? pad : "");
        }
        out << "\n";
      };
      line(table.header);
      for (const auto& cells : text) line(cells);
      break;
    }
  }
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "failed writing table output");
}

}  // namespace lrps
