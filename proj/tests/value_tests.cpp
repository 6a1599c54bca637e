#include "tabprot/value.hpp"

#include <doctest.h>

#include <random>

using namespace tabprot;

TEST_CASE("decimal strings parse exactly") {
  CHECK(parse_value("9.5") == Value(19, 2));
  CHECK(parse_value("36.0") == Value(36));
  CHECK(parse_value("-3.75") == Value(-15, 4));
  CHECK(parse_value("0.075") == Value(3, 40));
  CHECK(parse_value("+2") == Value(2));
  CHECK(parse_value("19/2") == Value(19, 2));
  CHECK(parse_value("-1/3") == Value(-1, 3));
}

TEST_CASE("bad literals are rejected") {
  for (const char* s : {"", ".", "-", "1..2", "1e3", "a", "1/0", "1/ 2", "--1"})
    CHECK_THROWS_AS(parse_value(s), std::invalid_argument);
}

TEST_CASE("rendering is canonical and round-trips the value") {
  CHECK(render_value(Value(19, 2)) == "9.5");
  CHECK(render_value(Value(36)) == "36");
  CHECK(render_value(Value(3, 40)) == "0.075");
  CHECK(render_value(Value(-15, 4)) == "-3.75");
  CHECK(render_value(Value(1, 3)) == "1/3");
  CHECK(render_value(Value(0)) == "0");
}

TEST_CASE("parse/render round-trip on random rationals") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    long num = static_cast<long>(rng() % 2000001) - 1000000;
    long den = static_cast<long>(rng() % 999) + 1;
    Value v(num, den);
    CHECK(parse_value(render_value(v)) == v);
  }
}
