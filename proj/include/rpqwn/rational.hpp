#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rpqwn {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// x(x-1)...(x-y+1); empty product for y = 0.
Int falling_factorial(const Int& x, long long y);

Int binomial(const Int& n, const Int& k);

Int factorial(long long n);

// Exact integer power; p < 0 requires base != 0.
Rational rational_pow(const Rational& base, long long p);

// "p" or "p/q" with q > 0 in lowest terms.
std::string render_rational(const Rational& r);

// Parses "p" or "p/q" (optional leading '-'); throws DomainError on junk.
Rational parse_rational(const std::string& text);

} // namespace rpqwn
