#include "lgr/rational.hpp"

#include <cstdlib>

namespace lgr {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(std::stoll(text));
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational literal: " + text);
  } catch (const std::out_of_range&) {
    throw DomainError("rational literal out of range: " + text);
  }
}

long long rational_floor(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

long long rational_ceil(const Rational& r) {
  return -rational_floor(-r);
}

Rational rational_between(const Rational& lo, const Rational& hi,
                          long long max_denominator) {
  if (!(lo < hi)) throw DomainError("empty interval");
  for (long long d = 1; d <= max_denominator; ++d) {
    long long n = rational_floor(lo * Rational(d)) + 1;
    Rational candidate(n, d);
    if (lo < candidate && candidate < hi) return candidate;
  }
  throw DomainError("no rational with denominator <= " +
                    std::to_string(max_denominator) + " in the interval");
}

}  // namespace lgr
