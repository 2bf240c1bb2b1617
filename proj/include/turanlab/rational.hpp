#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace turanlab {

using BigInt = boost::multiprecision::cpp_int;
/// Exact rational. Small values stay in the inline limb buffer, larger ones
/// promote to heap-backed limbs transparently.
using Rational = boost::multiprecision::cpp_rational;

/// Lowest-terms "p/q" form; integers are written with denominator 1.
std::string to_string(const Rational& r);

/// Accepts "p/q" or an integer "p". Decimal and exponent forms are rejected
/// with a ValidationError, as is a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

BigInt binomial(std::int64_t n, std::int64_t k);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational approximate(double value, std::int64_t max_denominator);

} // namespace turanlab
