#pragma once

#include <optional>

#include "lgr/ncseries.hpp"
#include "lgr/rational.hpp"

namespace lgr {

/// Radius parameter of a convergent group ring: the ball of radius l^(-r).
/// r is a positive rational with denominator <= 64 so that all norm
/// exponents stay exact.
struct GaussParams {
  Rational r;
  explicit GaussParams(Rational radius_exponent);
};

/// The I-adic valuation v_n: minimum coefficient valuation over monomials of
/// degree < n; nullopt encodes +infinity (the zero class). Throws
/// PrecisionError when a coefficient's zero floor is too low to decide the
/// minimum.
std::optional<int> iadic_valuation(const NcSeries& a, int n);

struct GaussNormResult {
  /// -log_l |a|_r = min over stored monomials of v(a_I) + |I| r; nullopt for
  /// the zero series.
  std::optional<Rational> exponent;
  /// A monomial attaining the minimum (deglex-least among ties).
  Monomial witness;
};

GaussNormResult gauss_norm(const NcSeries& a, const GaussParams& p);

/// Sum of generator weights along the word: the level of the weight
/// filtration the monomial generates.
int weight_level(const Monomial& m, const Alphabet& alphabet);

/// Whether a lies in W^(-k): no known-nonzero coefficient on a monomial of
/// weight < k. Coefficients that are zero-at-floor are treated as zero
/// (membership "as far as the carried precision can tell").
bool in_weight(const NcSeries& a, int k);

struct InclusionCheck {
  bool ok = false;
  std::optional<Monomial> witness;  // failing monomial, if any
};

/// Verifies I^n subset W^(-n) and W^(-2n-1) subset I^n on the full monomial
/// basis up to degree_bound.
InclusionCheck check_w_iadic_inclusions(const Alphabet& alphabet, int n,
                                        int degree_bound = 7);

/// Growth table of one element against a radius: v_m and v_m + m*r for
/// m = 1..truncation, the graded dimensions of W^(-k) mod I^truncation, and
/// a verdict. Truncated data cannot prove a limit; the verdict is
/// "consistent with membership" only.
struct FiltrationReport {
  Rational r{0};
  std::vector<std::optional<int>> v_table;        // index m-1 -> v_m
  std::vector<std::optional<Rational>> trend;     // v_m + m*r (nullopt = inf)
  std::vector<int> w_dims;                        // k -> dim W^(-k) mod I^n
  bool monotone_tail = false;
  bool consistent = false;
  std::string note;
};

FiltrationReport convergence_report(const NcSeries& a, const GaussParams& p);

}  // namespace lgr
