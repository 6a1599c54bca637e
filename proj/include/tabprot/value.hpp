#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tabprot {

// Exact rational cell value. All table arithmetic is exact; a value equal
// to a bound carries meaning (it orients a graph edge), so floating point
// is never used anywhere in the library.
using Value = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "12", "-3.75", "+0.5", "19/2". Throws std::invalid_argument on
// anything else.
Value parse_value(const std::string& text);

// Canonical form: integer if integral, finite decimal if the denominator
// divides a power of ten, "p/q" otherwise. parse_value(render_value(v)) == v.
std::string render_value(const Value& v);

}  // namespace tabprot
