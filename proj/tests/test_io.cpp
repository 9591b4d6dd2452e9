#include <doctest.h>

#include <filesystem>
#include <random>

#include "clonelab/io.hpp"

using namespace clonelab;

TEST_CASE("endofunction and operation text formats") {
  FnTable f = parse_fn_text("3\n1 2 0\n");
  CHECK(f.universe() == 3);
  CHECK(f.arity() == 1);
  CHECK(f.values() == std::vector<int>{1, 2, 0});
  CHECK(format_endofunction(f) == "3\n1 2 0\n");

  FnTable op = parse_fn_text("2 2\n0 1 1 0\n");
  CHECK(op.arity() == 2);
  CHECK(format_operation(op) == "2 2\n0 1 1 0\n");
  CHECK_THROWS_AS(format_endofunction(op), InvalidInput);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_fn_text("3\n1 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  try {
    parse_fn_text("3\n1 x 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 3);
  }
  try {
    parse_fn_text("3\n1 2 0 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 7);
  }
  CHECK_THROWS_AS(parse_fn_text(""), ParseError);
  CHECK_THROWS_AS(parse_fn_text("3\n1 2 3\n"), ParseError);  // value out of range
  CHECK_THROWS_AS(parse_fn_text("1 2 3\n0\n"), ParseError);  // three header ints
}

TEST_CASE("round trips are stable for random tables") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> pick_n(1, 6);
    int n = pick_n(rng);
    std::uniform_int_distribution<int> pick_m(1, 3);
    int m = pick_m(rng);
    std::uniform_int_distribution<int> val(0, n - 1);
    std::vector<int> vals(checked_table_size(n, m));
    for (int& v : vals) v = val(rng);
    FnTable f(n, m, std::move(vals));
    CHECK(parse_fn_text(format_operation(f)) == f);
    if (f.is_unary()) CHECK(parse_fn_text(format_endofunction(f)) == f);
  }
}

TEST_CASE("file io round trip") {
  auto dir = std::filesystem::temp_directory_path() / "clonelab-io-test";
  std::filesystem::create_directories(dir);
  FnTable f = parse_fn_text("4\n1 0 2 2\n");
  write_fn_file(dir / "f.fn", f);
  CHECK(read_fn_file(dir / "f.fn") == f);
  CHECK_THROWS_AS(read_fn_file(dir / "missing.fn"), InvalidInput);
  std::filesystem::remove_all(dir);
}
