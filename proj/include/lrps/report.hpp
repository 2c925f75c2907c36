#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lrps/engine.hpp"
#include "lrps/fpe_model.hpp"

namespace lrps {

enum Column : std::uint32_t {
  kColumnValue = 1u << 0,
  kColumnExact = 1u << 1,
  kColumnAbsError = 1u << 2,
  kColumnRelError = 1u << 3,
};

/// "value,exact,abs_error" -> bitmask. Throws Error(SchemaError).
std::uint32_t parse_columns(std::string_view list);

struct TableSpec {
  std::vector<std::vector<double>> points;  // a 1-element point is broadcast
  std::vector<double> times;
  std::vector<Rational> gammas;             // empty: the problem's own gamma
  std::uint32_t columns = kColumnValue | kColumnExact | kColumnAbsError | kColumnRelError;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Throws Error(ExactUnavailable) when exact columns are requested for a
/// problem without a closed form, Error(DivisionByZeroExact) for rel_error
/// at a zero exact value, Error(Inapplicable) when a gamma cannot be solved.
Table run_table(const FpeProblem& problem, const TableSpec& spec);

/// abs_error per truncation order.
Table run_order_sweep(const FpeProblem& problem, const TableSpec& spec, const std::vector<int>& orders);

struct ResidualSample {
  std::vector<double> point;
  double tau = 0;
  double residual = 0;
};

struct ResidualEntry {
  Rational gamma;
  Outcome outcome = Outcome::Completed;
  int witness_k = 0;
  bool structural_zero = false;
  std::vector<ResidualSample> samples;
  double max_abs_residual() const;
};

/// The five (point, tau) pairs used by the residual check.
std::vector<ResidualSample> residual_sample_pairs(int dimension);

std::vector<ResidualEntry> residual_check(const FpeProblem& problem, const std::vector<Rational>& gammas);
Table residual_table(const std::vector<ResidualEntry>& entries);

enum class Format { Csv, Json, Pretty };

/// "csv", "json", "pretty". Throws Error(SchemaError).
Format parse_format(std::string_view name);

/// Throws Error(IoError) when the stream fails.
void emit(const Table& table, Format format, std::ostream& out);

/// Scientific notation with 15 significant digits and an unpadded exponent,
/// e.g. 5.80917121364088e-1.
std::string format_number(double x);

}  // namespace lrps
