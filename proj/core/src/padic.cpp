#include "lgr/padic.hpp"

#include <algorithm>
#include <sstream>

namespace lgr {

namespace {

void check_prime(long prime) {
  if (prime < 2) throw DomainError("prime must be >= 2");
}

void check_same_prime(const PadicScalar& a, const PadicScalar& b) {
  if (a.prime() != b.prime())
    throw DomainError("prime mismatch: " + std::to_string(a.prime()) +
                      " vs " + std::to_string(b.prime()));
}

}  // namespace

int precision_add(int a, int b) {
  if (a == kInfinitePrecision || b == kInfinitePrecision)
    return kInfinitePrecision;
  long s = static_cast<long>(a) + static_cast<long>(b);
  if (s >= kInfinitePrecision) return kInfinitePrecision;
  if (s <= std::numeric_limits<int>::min()) throw DomainError("precision underflow");
  return static_cast<int>(s);
}

mpz_class prime_power(long prime, int k) {
  if (k < 0) throw DomainError("negative power of the prime");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(prime),
                static_cast<unsigned long>(k));
  return r;
}

int val_int(const mpz_class& n, long prime) {
  check_prime(prime);
  if (n == 0) throw DomainError("val_int of zero");
  mpz_class reduced;
  mpz_class p(prime);
  mp_bitcnt_t e = mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return static_cast<int>(e);
}

PadicScalar PadicScalar::zero(long prime, int floor) {
  check_prime(prime);
  if (floor < 0) throw DomainError("zero floor must be nonnegative");
  return PadicScalar(prime, false, 0, mpz_class(0), floor);
}

PadicScalar PadicScalar::one(long prime, int precision) {
  return from_integer(1, prime, precision);
}

PadicScalar PadicScalar::from_integer(const mpz_class& n, long prime,
                                      int precision) {
  check_prime(prime);
  if (precision <= 0 || precision == kInfinitePrecision)
    throw DomainError("precision must be a positive finite digit count");
  if (n == 0) return zero(prime, kInfinitePrecision);
  int v = val_int(n, prime);
  if (v >= precision) return zero(prime, precision);
  mpz_class u = n / prime_power(prime, v);
  mpz_class window = prime_power(prime, precision - v);
  u %= window;
  if (u < 0) u += window;
  return PadicScalar(prime, true, v, std::move(u), precision);
}

PadicScalar PadicScalar::from_rational(const mpz_class& num,
                                       const mpz_class& den, long prime,
                                       int precision) {
  if (den == 0) throw DomainError("zero denominator");
  return from_integer(num, prime, precision).div_int(den);
}

PadicScalar PadicScalar::from_parts(long prime, int valuation, mpz_class unit,
                                    int abs_precision) {
  check_prime(prime);
  if (abs_precision == kInfinitePrecision || valuation >= abs_precision)
    throw DomainError("valuation must be strictly below the precision");
  if (unit <= 0 || unit % prime == 0)
    throw DomainError("unit must be positive and coprime to the prime");
  if (unit >= prime_power(prime, abs_precision - valuation))
    throw DomainError("unit exceeds the precision window");
  return PadicScalar(prime, true, valuation, std::move(unit), abs_precision);
}

int PadicScalar::valuation() const {
  if (!known_)
    throw DomainError("valuation of an exact zero is only bounded below");
  return val_;
}

int PadicScalar::valuation_lower_bound() const {
  return known_ ? val_ : prec_;
}

const mpz_class& PadicScalar::unit() const {
  if (!known_) throw DomainError("exact zero has no unit part");
  return unit_;
}

PadicScalar PadicScalar::clamp_precision(int precision) const {
  if (precision < 0) throw DomainError("negative precision");
  if (precision >= prec_) return *this;
  if (!known_) return zero(prime_, precision);
  if (val_ >= precision) return zero(prime_, precision);
  mpz_class u = unit_ % prime_power(prime_, precision - val_);
  return PadicScalar(prime_, true, val_, std::move(u), precision);
}

PadicScalar PadicScalar::operator-() const {
  if (!known_) return *this;
  mpz_class window = prime_power(prime_, prec_ - val_);
  mpz_class u = window - unit_;
  return PadicScalar(prime_, true, val_, std::move(u), prec_);
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
  check_same_prime(a, b);
  const long p = a.prime_;
  if (!a.known_ && !b.known_)
    return PadicScalar::zero(p, std::min(a.prec_, b.prec_));
  if (!a.known_) return b.clamp_precision(std::min(a.prec_, b.prec_));
  if (!b.known_) return a.clamp_precision(std::min(a.prec_, b.prec_));

  int n = std::min(a.prec_, b.prec_);
  int m = std::min(a.val_, b.val_);
  // (a+b)/l^m is known modulo l^(n-m).
  mpz_class s = a.unit_ * prime_power(p, a.val_ - m) +
                b.unit_ * prime_power(p, b.val_ - m);
  mpz_class window = prime_power(p, n - m);
  s %= window;
  if (s < 0) s += window;
  if (s == 0) return PadicScalar::zero(p, n);
  int e = val_int(s, p);
  mpz_class u = s / prime_power(p, e);
  u %= prime_power(p, n - m - e);
  return PadicScalar(p, true, m + e, std::move(u), n);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
  return a + (-b);
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  check_same_prime(a, b);
  const long p = a.prime_;
  if (!a.known_ || !b.known_) {
    // l^F * l^v stays divisible by l^(F+v).
    int fa = a.known_ ? a.val_ : a.prec_;
    int fb = b.known_ ? b.val_ : b.prec_;
    return PadicScalar::zero(p, precision_add(fa, fb));
  }
  int w = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
  int v = a.val_ + b.val_;
  mpz_class u = a.unit_ * b.unit_;
  u %= prime_power(p, w);
  return PadicScalar(p, true, v, std::move(u), v + w);
}

PadicScalar PadicScalar::inv() const {
  if (!known_) throw DomainError("inversion of exact zero");
  int w = prec_ - val_;
  mpz_class window = prime_power(prime_, w);
  mpz_class u;
  if (mpz_invert(u.get_mpz_t(), unit_.get_mpz_t(), window.get_mpz_t()) == 0)
    throw DomainError("unit not invertible (internal invariant violation)");
  return PadicScalar(prime_, true, -val_, std::move(u), -val_ + w);
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
  return a * b.inv();
}

PadicScalar PadicScalar::pow(unsigned long e) const {
  if (e == 0) {
    int w = known_ ? prec_ - val_ : kDefaultPrecision;
    if (w == kInfinitePrecision) w = kDefaultPrecision;
    return one(prime_, w);
  }
  PadicScalar acc = *this;
  PadicScalar base = *this;
  e -= 1;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

PadicScalar PadicScalar::add_int(const mpz_class& n) const {
  if (n == 0) return *this;
  if (!known_) {
    if (prec_ == kInfinitePrecision)
      return from_integer(n, prime_, kDefaultPrecision);
    return from_integer(n, prime_, prec_) + *this;
  }
  return *this + from_integer(n, prime_, prec_);
}

PadicScalar PadicScalar::mul_int(const mpz_class& n) const {
  if (n == 0) return zero(prime_, kInfinitePrecision);
  int vn = val_int(n, prime_);
  if (!known_) return zero(prime_, precision_add(prec_, vn));
  int w = prec_ - val_;
  mpz_class u = unit_ * (n / prime_power(prime_, vn));
  mpz_class window = prime_power(prime_, w);
  u %= window;
  if (u < 0) u += window;
  return PadicScalar(prime_, true, val_ + vn, std::move(u), val_ + vn + w);
}

PadicScalar PadicScalar::div_int(const mpz_class& n) const {
  if (n == 0) throw DomainError("division by zero integer");
  int vn = val_int(n, prime_);
  if (!known_) {
    int floor = prec_ == kInfinitePrecision ? kInfinitePrecision : prec_ - vn;
    if (floor < 0) throw PrecisionError("zero floor exhausted by division");
    return zero(prime_, floor);
  }
  int w = prec_ - val_;
  mpz_class window = prime_power(prime_, w);
  mpz_class un = n / prime_power(prime_, vn);
  un %= window;
  if (un < 0) un += window;
  mpz_class uinv;
  mpz_invert(uinv.get_mpz_t(), un.get_mpz_t(), window.get_mpz_t());
  mpz_class u = (unit_ * uinv) % window;
  return PadicScalar(prime_, true, val_ - vn, std::move(u), val_ - vn + w);
}

bool PadicScalar::equals_mod(const PadicScalar& other, int k) const {
  PadicScalar d = *this - other;
  if (d.known_) return d.val_ >= k;
  if (d.prec_ >= k) return true;
  throw PrecisionError(
      "cannot decide congruence mod l^" + std::to_string(k) +
      ": difference only known to vanish mod l^" + std::to_string(d.prec_));
}

bool PadicScalar::indistinguishable(const PadicScalar& other) const {
  check_same_prime(*this, other);
  int n = std::min(prec_, other.prec_);
  if (n == kInfinitePrecision) return !known_ && !other.known_;
  return equals_mod(other, n);
}

mpz_class PadicScalar::residue(int k) const {
  if (k < 0) throw DomainError("negative modulus exponent");
  if (!known_) {
    if (prec_ < k)
      throw PrecisionError("zero floor below requested residue window");
    return mpz_class(0);
  }
  if (val_ < 0) throw DomainError("residue of a non-integral value");
  if (prec_ < k) throw PrecisionError("requested residue exceeds precision");
  mpz_class r = unit_ * prime_power(prime_, val_);
  r %= prime_power(prime_, k);
  return r;
}

std::string PadicScalar::to_string() const {
  std::ostringstream os;
  if (!known_) {
    if (prec_ == kInfinitePrecision) return "0";
    os << "0 + O(" << prime_ << "^" << prec_ << ")";
    return os.str();
  }
  os << prime_ << "^" << val_ << " * " << unit_ << " + O(" << prime_ << "^"
     << prec_ << ")";
  return os.str();
}

bool operator==(const PadicScalar& a, const PadicScalar& b) {
  if (a.prime_ != b.prime_ || a.known_ != b.known_ || a.prec_ != b.prec_)
    return false;
  if (!a.known_) return true;
  return a.val_ == b.val_ && a.unit_ == b.unit_;
}

PadicScalar binomial(const PadicScalar& e, unsigned long k) {
  if (k == 0) {
    int w = e.is_known() ? e.precision() - e.valuation() : kDefaultPrecision;
    if (w == kInfinitePrecision) w = kDefaultPrecision;
    return PadicScalar::one(e.prime(), w);
  }
  PadicScalar acc = e;
  mpz_class kfact(1);
  for (unsigned long j = 1; j < k; ++j) {
    acc = acc * e.sub_int(mpz_class(j));
    kfact *= mpz_class(j + 1);
  }
  return acc.div_int(kfact);
}

}  // namespace lgr
