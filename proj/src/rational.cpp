#include "sicps/rational.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sicps {

BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long j = 1; j <= k; ++j) {
    result *= n - k + j;
    result /= j;
  }
  return result;
}

std::string to_fraction_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  return num.str() + "/" + den.str();
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed fraction: " + text);
  }
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_decimal_string(const Rational& value) {
  std::ostringstream os;
  os << std::setprecision(6) << to_double(value);
  return os.str();
}

}  // namespace sicps
