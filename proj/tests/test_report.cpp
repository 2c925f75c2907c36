#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lrps/error.hpp"
#include "lrps/report.hpp"

using namespace lrps;

namespace {
std::string csv(const Table& t) {
  std::ostringstream os;
  emit(t, Format::Csv, os);
  return os.str();
}
double num(const Cell& c) { return std::get<double>(c); }
}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.580917121364088) == "5.80917121364088e-1");
  CHECK(format_number(1.0) == "1.00000000000000e0");
  CHECK(format_number(-2.5e-14) == "-2.50000000000000e-14");
  CHECK(format_number(0.0) == "0.00000000000000e0");
  CHECK(format_number(1e100) == "1.00000000000000e100");
}

TEST_CASE("csv layout") {
  Table empty;
  empty.header = {"tau", "value"};
  CHECK(csv(empty) == "tau,value\n");
  Table one;
  one.header = {"value"};
  one.rows.push_back({0.580917121364088});
  CHECK(csv(one) == "value\n5.80917121364088e-1\n");
  Table text;
  text.header = {"a"};
  text.rows.push_back({std::string("x,y")});
  CHECK(csv(text) == "a\n\"x,y\"\n");
}

TEST_CASE("json mirrors the table") {
  Table t;
  t.header = {"gamma", "value", "n"};
  t.rows.push_back({std::string("1/2"), 0.25, 3LL});
  std::ostringstream os;
  emit(t, Format::Json, os);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["columns"].size() == 3);
  CHECK(doc["rows"][0][0] == "1/2");
  CHECK(doc["rows"][0][1].get<double>() == 0.25);
  CHECK(doc["rows"][0][2].get<long long>() == 3);
}

TEST_CASE("pretty output is aligned") {
  Table t;
  t.header = {"name", "value"};
  t.rows.push_back({std::string("a"), 1.5});
  t.rows.push_back({std::string("long name"), 22.0});
  std::ostringstream os;
  emit(t, Format::Pretty, os);
  std::istringstream in(os.str());
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l2.size() == l3.size());
}

TEST_CASE("emit reports stream failures") {
  Table t;
  t.header = {"x"};
  std::ostringstream os;
  os.setstate(std::ios::badbit);
  CHECK_THROWS_WITH_AS(emit(t, Format::Csv, os), doctest::Contains("IoError"), Error);
}

TEST_CASE("error table for Example 2") {
  TableSpec spec;
  spec.points = {{0.5}};
  spec.times = {0.0, 0.15, 0.9};
  const Table t = run_table(builtin_example("2", 1), spec);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.header == std::vector<std::string>{"gamma", "z1", "tau", "value", "exact", "abs_error", "rel_error"});
  CHECK(num(t.rows[0][5]) == 0.0);
  CHECK(num(t.rows[1][5]) == doctest::Approx(5.373e-14).epsilon(0.02));
  CHECK(num(t.rows[2][3]) == doctest::Approx(1.229800969474331).epsilon(1e-14));
  CHECK(num(t.rows[2][4]) == doctest::Approx(1.229801555578475).epsilon(1e-14));
  CHECK(csv(t) == csv(run_table(builtin_example("2", 1), spec)));
}

TEST_CASE("error table options") {
  TableSpec spec;
  spec.points = {{0.5}, {0.25, 0.75}};
  spec.times = {0.3};
  spec.gammas = {Rational(1, 2), Rational(1)};
  spec.columns = kColumnValue | kColumnAbsError;
  const Table t = run_table(builtin_example("6"), spec);
  CHECK(t.header.size() == 6);
  CHECK(t.rows.size() == 4);
  CHECK(std::get<std::string>(t.rows[0][0]) == "1/2");
  CHECK(num(t.rows[0][1]) == 0.5);
  CHECK(num(t.rows[0][2]) == 0.5);

  spec.points = {{0.5, 0.5, 0.5}};
  CHECK_THROWS_AS(run_table(builtin_example("6"), spec), Error);
  spec.points = {{0.5}};
  spec.times = {0.5, 0.2};
  CHECK_THROWS_AS(run_table(builtin_example("6"), spec), Error);
}

TEST_CASE("error table failures") {
  TableSpec spec;
  spec.points = {{0.5}};
  spec.times = {0.5};
  CHECK_THROWS_WITH_AS(run_table(builtin_example("s6b", Rational(1, 2)), spec),
                       doctest::Contains("ExactUnavailable"), Error);
  spec.columns = kColumnValue;
  CHECK(run_table(builtin_example("s6b", Rational(1, 2)), spec).rows.size() == 1);
  CHECK_THROWS_WITH_AS(run_table(builtin_example("s6b", Rational(4, 5)), spec), doctest::Contains("Inapplicable"),
                       Error);
  TableSpec zero;
  zero.points = {{0.0}};
  zero.times = {0.0};
  CHECK_THROWS_WITH_AS(run_table(builtin_example("1"), zero), doctest::Contains("DivisionByZeroExact"), Error);
  zero.columns = kColumnAbsError;
  CHECK(num(run_table(builtin_example("1"), zero).rows[0][3]) == 0.0);
}

TEST_CASE("order sweep decreases with K") {
  TableSpec spec;
  spec.points = {{0.5}, {1.0}};
  spec.times = {0.1, 0.2, 0.3, 0.4, 0.5};
  for (const char* id : {"2", "6", "8"}) {
    const Table t = run_order_sweep(builtin_example(id, 1), spec, {4, 6, 8});
    CHECK(t.header.back() == "abs_error_K8");
    const std::size_t first = t.header.size() - 3;
    for (const auto& row : t.rows) {
      CHECK(num(row[first + 2]) <= num(row[first + 1]));
      CHECK(num(row[first + 1]) <= num(row[first]));
    }
  }
  CHECK_THROWS_AS(run_order_sweep(builtin_example("2"), spec, {}), Error);
}

TEST_CASE("residual check") {
  const auto e4 = residual_check(builtin_example("4"), {Rational(3, 4)});
  REQUIRE(e4.size() == 1);
  CHECK(e4[0].structural_zero);
  CHECK(e4[0].samples.size() == 5);
  CHECK(e4[0].max_abs_residual() < 1e-9);

  const auto e1 = residual_check(builtin_example("1"), {Rational(1, 2)});
  CHECK(e1[0].outcome == Outcome::EarlyTerminated);
  CHECK(e1[0].structural_zero);

  const auto b = residual_check(builtin_example("s6b"), {Rational(4, 5)});
  CHECK(b[0].outcome == Outcome::Inapplicable);
  CHECK(b[0].witness_k == 3);
  const Table t = residual_table(b);
  CHECK(std::get<std::string>(t.rows[0][1]) == "Inapplicable");
}

TEST_CASE("column and format names") {
  CHECK(parse_columns("value,rel_error") == (kColumnValue | kColumnRelError));
  CHECK_THROWS_AS(parse_columns("value,bogus"), Error);
  CHECK_THROWS_AS(parse_columns(""), Error);
  CHECK(parse_format("json") == Format::Json);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}
