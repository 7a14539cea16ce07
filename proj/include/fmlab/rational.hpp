#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fmlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", an integer, or a plain decimal ("0.25") into an exact rational.
Rational parse_rational(const std::string& text);

// Exact floor for a (possibly negative) rational.
BigInt rational_floor(const Rational& r);

double to_double(const Rational& r);

// C(n, k) as an exact big integer; 0 when k > n.
BigInt binomial(unsigned n, unsigned k);

}  // namespace fmlab
