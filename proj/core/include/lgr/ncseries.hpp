#pragma once

#include <map>
#include <optional>

#include "lgr/monomial.hpp"
#include "lgr/padic.hpp"

namespace lgr {

/// A word in the free generators with l-adic integer exponents: one element
/// of the free pro-l group. Exponents constructed from plain integers also
/// remember their exact value, which lets matrix representations evaluate
/// the word without precision loss.
class GroupWord {
 public:
  struct Letter {
    int gen;
    PadicScalar exponent;               // valuation >= 0
    std::optional<mpz_class> exact;     // set when built from an integer
  };

  GroupWord(AlphabetPtr alphabet, long prime);

  /// Appends gen^exponent. Consecutive letters are kept as written (no free
  /// reduction); the Magnus image is insensitive to it.
  GroupWord& append(int gen, PadicScalar exponent);
  GroupWord& append(int gen, const mpz_class& exponent);

  static GroupWord generator(AlphabetPtr alphabet, long prime, int gen,
                             const mpz_class& exponent = 1);
  /// a b a^-1 b^-1.
  static GroupWord commutator(const GroupWord& a, const GroupWord& b);

  GroupWord inverse() const;
  GroupWord concat(const GroupWord& other) const;

  const AlphabetPtr& alphabet() const { return alphabet_; }
  long prime() const { return prime_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  std::string to_string() const;

 private:
  AlphabetPtr alphabet_;
  long prime_;
  std::vector<Letter> letters_;
};

/// A truncated noncommutative power series over PadicScalar: the concrete
/// model of R[[pi_1^l]]/I^n for a free pro-l group, under gamma_i |-> 1+T_i.
///
/// Coefficients are a sparse map in deglex order; absent monomials are exact
/// zeros. Entries that are exactly zero to every precision are dropped;
/// entries "zero modulo l^F" for finite F are retained, since they carry a
/// precision floor. Values are immutable in practice: all operations return
/// fresh series.
class NcSeries {
 public:
  using CoeffMap = std::map<Monomial, PadicScalar>;

  NcSeries(AlphabetPtr alphabet, long prime, int truncation);

  static NcSeries zero(AlphabetPtr alphabet, long prime, int truncation) {
    return NcSeries(std::move(alphabet), prime, truncation);
  }
  static NcSeries one(AlphabetPtr alphabet, long prime, int truncation,
                      int precision = kDefaultPrecision);
  static NcSeries monomial(AlphabetPtr alphabet, long prime, int truncation,
                           const Monomial& m,
                           int precision = kDefaultPrecision);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  long prime() const { return prime_; }
  int truncation() const { return truncation_; }
  const CoeffMap& coefficients() const { return coeffs_; }
  bool structurally_zero() const { return coeffs_.empty(); }

  /// Coefficient of m (an exact zero when absent).
  PadicScalar coefficient(const Monomial& m) const;
  void set_coefficient(const Monomial& m, PadicScalar c);
  void add_to_coefficient(const Monomial& m, const PadicScalar& c);

  /// The empty-word coefficient; a ring homomorphism to scalars.
  PadicScalar augmentation() const;

  NcSeries operator-() const;
  friend NcSeries operator+(const NcSeries& a, const NcSeries& b);
  friend NcSeries operator-(const NcSeries& a, const NcSeries& b);
  /// Noncommutative convolution, discarding monomials of degree >=
  /// min(truncations).
  friend NcSeries operator*(const NcSeries& a, const NcSeries& b);

  NcSeries scalar_mul(const PadicScalar& c) const;
  NcSeries scalar_mul_int(const mpz_class& n) const;
  NcSeries scalar_div_int(const mpz_class& n) const;

  /// Restriction to a smaller truncation.
  NcSeries truncated(int n) const;

  /// True when every known coefficient has valuation >= 0 (lies in the image
  /// of the integral group ring).
  bool integral() const;

  /// Coefficientwise congruence modulo l^k (throws PrecisionError when
  /// undecidable).
  bool equals_mod(const NcSeries& other, int k) const;

  std::string to_string() const;

  friend bool operator==(const NcSeries& a, const NcSeries& b);

 private:
  AlphabetPtr alphabet_;
  long prime_;
  int truncation_;
  CoeffMap coeffs_;
};

/// The Magnus embedding gamma_i |-> 1 + T_i: maps a group word to a
/// group-like series with augmentation 1, generator powers expanding through
/// the l-adic binomial series. Exponents with exact integer values produce
/// exact integer coefficients.
NcSeries magnus_embed(const GroupWord& w, int truncation,
                      int precision = kDefaultPrecision);

/// log of a group-like series: sum_{j>=1} (-1)^(j+1) (g-1)^j / j, a finite
/// sum modulo I^n. Requires augmentation 1; the result has augmentation 0
/// and may carry negative-valuation coefficients.
NcSeries log_grouplike(const NcSeries& g);

/// exp of an augmentation-0 series: sum x^j / j!. Two-sided inverse of
/// log_grouplike on their domains.
NcSeries exp_augzero(const NcSeries& x);

/// Commutative quotient: letters of each monomial sorted. The degree-1 part
/// of abelianize(g - 1) reads off the H_1 coordinates of a group word g.
NcSeries abelianize(const NcSeries& a);

}  // namespace lgr
