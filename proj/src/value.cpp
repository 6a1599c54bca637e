#include "tabprot/value.hpp"

#include <cctype>
#include <stdexcept>

namespace tabprot {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_value(const std::string& text) {
  throw std::invalid_argument("not a valid value literal: '" + text + "'");
}

}  // namespace

Value parse_value(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = (s[0] == '-');
    s = s.substr(1);
  }
  if (s.empty()) bad_value(text);

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_value(text);
    BigInt d(den);
    if (d == 0) bad_value(text);
    Value v(BigInt(num), d);
    return negative ? Value(-v) : v;
  }

  auto dot = s.find('.');
  std::string int_part = (dot == std::string::npos) ? s : s.substr(0, dot);
  std::string frac_part = (dot == std::string::npos) ? "" : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) bad_value(text);
  if (!int_part.empty() && !all_digits(int_part)) bad_value(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_value(text);

  BigInt numerator = int_part.empty() ? BigInt(0) : BigInt(int_part);
  BigInt denominator = 1;
  for (char c : frac_part) {
    numerator = numerator * 10 + (c - '0');
    denominator *= 10;
  }
  Value v(numerator, denominator);
  return negative ? Value(-v) : v;
}

std::string render_value(const Value& v) {
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  bool negative = num < 0;
  if (negative) num = -num;

  // Count factors of 2 and 5 in the (reduced) denominator.
  BigInt rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }

  std::string out;
  if (rest != 1) {
    out = num.str() + "/" + den.str();
  } else if (den == 1) {
    out = num.str();
  } else {
    int shift = std::max(twos, fives);
    BigInt scaled = num;
    for (int i = 0; i < shift - twos; ++i) scaled *= 2;
    for (int i = 0; i < shift - fives; ++i) scaled *= 5;
    std::string digits = scaled.str();
    if (static_cast<int>(digits.size()) <= shift) {
      digits.insert(0, shift + 1 - digits.size(), '0');
    }
    out = digits.substr(0, digits.size() - shift) + "." +
          digits.substr(digits.size() - shift);
  }
  return negative ? "-" + out : out;
}

}  // namespace tabprot
