#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace bicenter {

// Exact arithmetic for all lengths, weights, distances and objective values.
// Intermediate products of distances and weights overflow any fixed width,
// so the integer parts are arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;

// Parses an integer ("42", "-3") or decimal ("2.75") literal into an exact
// rational. Returns nullopt on malformed input.
std::optional<Scalar> parse_scalar(std::string_view text);

// Display-only decimal rendering; exact values always travel as num/den.
std::string to_decimal_string(const Scalar& value, int significant_digits = 12);

std::string to_fraction_string(const Scalar& value);

}  // namespace bicenter
