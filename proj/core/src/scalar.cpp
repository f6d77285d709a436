#include "bicenter/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace bicenter {

std::optional<Scalar> parse_scalar(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  Int integer_part = 0;
  Int fraction_part = 0;
  Int fraction_scale = 1;
  bool any_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    integer_part = integer_part * 10 + (text[pos] - '0');
    any_digit = true;
    ++pos;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      fraction_part = fraction_part * 10 + (text[pos] - '0');
      fraction_scale *= 10;
      any_digit = true;
      ++pos;
    }
  }
  if (!any_digit || pos != text.size()) return std::nullopt;
  Scalar value = Scalar(integer_part) + Scalar(fraction_part, fraction_scale);
  if (negative) value = -value;
  return value;
}

std::string to_decimal_string(const Scalar& value, int significant_digits) {
  if (value == 0) return "0";
  std::ostringstream out;
  out.precision(significant_digits);
  out << static_cast<double>(value);
  return out.str();
}

std::string to_fraction_string(const Scalar& value) {
  std::ostringstream out;
  out << numerator(value);
  if (denominator(value) != 1) out << "/" << denominator(value);
  return out.str();
}

}  // namespace bicenter
