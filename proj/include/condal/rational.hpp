#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace condal {

// Exact arbitrary-precision rationals. Every probability computation in
// this library is exact; floating point is never used, so all equality
// tests have tolerance zero.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or an integer string. Decimal literals ("0.5", "1e-3")
// are rejected: the exactness contract forbids them.
Rational parse_rational(const std::string& text);

// Renders in reduced form: "p/q", or just "p" when the denominator is 1.
std::string rational_string(const Rational& r);

}  // namespace condal
