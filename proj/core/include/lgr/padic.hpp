#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <string>

#include "lgr/errors.hpp"

namespace lgr {

/// Default absolute working precision, in l-adic digits. Every top-level
/// computation may override it; all desk-scale runs stay far below it.
inline constexpr int kDefaultPrecision = 64;

/// Sentinel for "known to every precision" (the exact zero).
inline constexpr int kInfinitePrecision = std::numeric_limits<int>::max();

/// An element of Q_l known to finite absolute precision.
///
/// A known value is stored as l^v * u with u a unit in [1, l^(N-v)) coprime
/// to l; the value is known modulo l^N (absolute precision N, so the unit is
/// known to N - v relative digits). The invariant v < N is maintained: a
/// value whose valuation reaches its precision window is indistinguishable
/// from zero and is represented as an exact zero carrying the window as its
/// floor ("known to be 0 modulo l^floor").
///
/// Arithmetic never increases claimed precision: results carry the minimum
/// precision implied by the operands. Values are immutable after
/// construction and safe to share across threads.
class PadicScalar {
 public:
  /// The exact zero; `floor` records modulo which power it is known to vanish.
  static PadicScalar zero(long prime, int floor = kInfinitePrecision);
  static PadicScalar one(long prime, int precision = kDefaultPrecision);
  static PadicScalar from_integer(const mpz_class& n, long prime,
                                  int precision = kDefaultPrecision);
  /// num/den as an element of Q_l; den must be nonzero.
  static PadicScalar from_rational(const mpz_class& num, const mpz_class& den,
                                   long prime,
                                   int precision = kDefaultPrecision);
  /// Assembles a known value from parts; validates all invariants.
  static PadicScalar from_parts(long prime, int valuation, mpz_class unit,
                                int abs_precision);

  long prime() const { return prime_; }
  bool is_zero() const { return !known_; }
  bool is_known() const { return known_; }
  /// Known and of valuation zero.
  bool is_unit() const { return known_ && val_ == 0; }

  /// Exact valuation. Throws DomainError on an exact zero (whose valuation
  /// is only bounded below by the floor).
  int valuation() const;
  /// Exact valuation for known values, the floor for exact zeros.
  int valuation_lower_bound() const;
  /// Absolute precision for known values, the floor for exact zeros.
  int precision() const { return prec_; }
  const mpz_class& unit() const;

  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);

  /// Multiplicative inverse. Throws DomainError on an exact zero. The result
  /// keeps the operand's relative precision.
  PadicScalar inv() const;
  PadicScalar pow(unsigned long e) const;

  /// Arithmetic against integers treated as exactly known. These preserve
  /// the scalar's relative precision (unlike going through from_integer,
  /// which would clamp the integer to a finite window first).
  PadicScalar add_int(const mpz_class& n) const;
  PadicScalar sub_int(const mpz_class& n) const { return add_int(-n); }
  PadicScalar mul_int(const mpz_class& n) const;
  PadicScalar div_int(const mpz_class& n) const;

  /// Truncate to a (smaller) absolute precision.
  PadicScalar clamp_precision(int precision) const;

  /// Congruence modulo l^k. Throws PrecisionError when the operands do not
  /// carry enough precision to decide.
  bool equals_mod(const PadicScalar& other, int k) const;
  /// Congruent modulo the shared precision window.
  bool indistinguishable(const PadicScalar& other) const;

  /// Representative of the value modulo l^k, in [0, l^k). Requires
  /// valuation >= 0 and k within precision.
  mpz_class residue(int k) const;

  /// Renders as "l^v * u + O(l^N)" (or "0 + O(l^N)" / "0").
  std::string to_string() const;

  /// Structural equality (same representation). Semantic comparisons should
  /// use equals_mod / indistinguishable.
  friend bool operator==(const PadicScalar& a, const PadicScalar& b);
  friend bool operator!=(const PadicScalar& a, const PadicScalar& b) {
    return !(a == b);
  }

 private:
  PadicScalar(long prime, bool known, int val, mpz_class unit, int prec)
      : prime_(prime), known_(known), val_(val), unit_(std::move(unit)),
        prec_(prec) {}

  long prime_ = 0;
  bool known_ = false;
  int val_ = 0;       // meaningful when known_
  mpz_class unit_;    // in [1, l^(prec_-val_)), coprime to l; known_ only
  int prec_ = kInfinitePrecision;  // abs precision (known) or zero floor
};

/// Largest e with l^e dividing n, on arbitrary-size integers. Throws
/// DomainError for n == 0.
int val_int(const mpz_class& n, long prime);

/// l^k as an integer (k >= 0).
mpz_class prime_power(long prime, int k);

/// Saturating addition on precisions (handles the infinite sentinel).
int precision_add(int a, int b);

/// The l-adically convergent binomial coefficient binom(e, k) =
/// e(e-1)...(e-k+1)/k!, for an l-adic integer e. Exact valuation
/// bookkeeping; the only convergence-sensitive primitive of the series
/// layer.
PadicScalar binomial(const PadicScalar& e, unsigned long k);

}  // namespace lgr
