#pragma once

#include <boost/rational.hpp>
#include <string>

#include "lgr/errors.hpp"

namespace lgr {

/// Exact rational numbers, used for Gauss-norm exponents and bound formulas.
/// Always kept in lowest terms by boost::rational.
using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p/q" or "p". Throws DomainError on malformed input or q == 0.
Rational parse_rational(const std::string& text);

/// Largest integer <= r.
long long rational_floor(const Rational& r);

/// Smallest integer >= r.
long long rational_ceil(const Rational& r);

/// Some rational strictly inside (lo, hi) with denominator <= max_denominator,
/// preferring small denominators. Throws DomainError if none exists.
Rational rational_between(const Rational& lo, const Rational& hi,
                          long long max_denominator = 64);

}  // namespace lgr
