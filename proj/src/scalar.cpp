#include "cvx/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace cvx {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty number");

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      try {
        std::size_t used = 0;
        exponent += std::stol(s.substr(i + 1), &used);
        if (used != s.size() - i - 1) throw std::invalid_argument("exponent");
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed exponent in '" + text + "'");
      }
      i = s.size();
      break;
    } else {
      throw std::invalid_argument("malformed number '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + text + "'");
  // GMP reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  Rational value{Integer(digits)};
  Integer ten_power = 1;
  for (long k = 0; k < std::abs(exponent); ++k) ten_power *= 10;
  if (exponent >= 0) value *= Rational(ten_power);
  else value /= Rational(ten_power);
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  return q.str();
}

}  // namespace cvx
