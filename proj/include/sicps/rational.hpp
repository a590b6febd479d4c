#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sicps {

// Every rate and memory value in the library is an exact rational. Floating
// point only shows up when a value is rendered for humans (or CSV).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k); zero when k < 0, n < 0 or k > n.
BigInt binomial(long long n, long long k);

/// Reduced "p/q" form. Integers are printed as "p/1" so the format is uniform.
std::string to_fraction_string(const Rational& value);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
Rational parse_fraction(const std::string& text);

/// Decimal rendering with six significant digits.
std::string to_decimal_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace sicps
