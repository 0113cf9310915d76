#pragma once

#include "lgr/endomorphism.hpp"
#include "lgr/rational.hpp"

namespace lgr {

/// Multiplicative order of q modulo l (modulo 4 when l = 2). Throws
/// DomainError when q is not a unit.
int multiplicative_order(const mpz_class& q, long ell);

/// v_l(q^k - 1) by the case-split formula: with r the order of q mod l
/// (mod 4 for l = 2),
///   r | k      : v_l(q^r - 1) + v_l(k/r)
///   r !| k     : 0 for odd l, 1 for l = 2.
/// Throws DomainError when q^r = 1 (q a root of unity).
int vl_qpow(const mpz_class& q, long k, long ell);

/// Denominator cap for lifting from level i to level m:
/// v(i, m, alpha) = sum_{s=1}^{m-i-1} v_l(alpha^s - 1). Requires m >= i+1.
int v_bound(int i, int m, const mpz_class& alpha, long ell);

/// Closed-form bound C(q, l, k) >= sum_{i<=k} v_l(q^i - 1):
///   (k/r)(v_l(q^r - 1) + 1/(l-1))          for odd l,
///   (k/r)(v_l(q^r - 1) + 1/(l-1) + 1) + 1/r for l = 2.
Rational c_bound(const mpz_class& q, long ell, long k);

/// Radius threshold above which the dense eigenbasis is guaranteed:
/// C(base^2, l, 1) when all weights are 2, C(base, l, 1) when all weights
/// are 1 (the pure cases), 2 C(base, l, 1) for mixed alphabets.
Rational r_alpha_threshold(const Endomorphism& e);

struct Eigenspace {
  PadicScalar eigenvalue;
  std::vector<int> levels;  // weight levels carrying this eigenvalue
  int dimension = 0;
};

struct SemisimpleReport {
  int total_dimension = 0;
  std::vector<Eigenspace> eigenspaces;
  bool diagonalizable = false;  // eigenspace dimensions sum to the total
  int min_residual_floor = kInfinitePrecision;
};

/// Verifies the graded action is scalar level by level, then solves
/// (M - lambda)x = 0 on the whole space mod I^n for each expected
/// eigenvalue. Throws DomainError on a non-scalar graded action,
/// PrecisionError when a rank cannot be decided.
SemisimpleReport check_semisimple(const Endomorphism& e, int n);

/// An eigenvector of the action lifted from a weight-graded seed class,
/// with its exact denominator history and the proven caps.
struct EigenLift {
  int level = 0;
  NcSeries seed;
  NcSeries lift;
  PadicScalar eigenvalue;
  /// v_m(lift) for m = 1..n (nullopt = +infinity).
  std::vector<std::optional<int>> denominator_profile;
  /// v(level, 2m, base) — the theorem's cap on -v_m.
  std::vector<int> bound_profile;
};

/// Corrects the seed level by level: at level m the graded equation divides
/// by (mu_m - mu_level), whose valuation is v_l(base^((m-level)/step) - 1).
/// Asserts the cap -v_m <= v(level, 2m, base) at every degree; a violation
/// is an internal error (the cap is a theorem). Requires the endomorphism
/// to carry quasi-scalar data with base = 1 mod l (mod 4 for l = 2).
EigenLift lift_eigenvector(const Endomorphism& e, const NcSeries& seed,
                           int level, int n);

struct DenseEigenbasis {
  Rational r{0};
  Rational threshold{0};
  std::vector<EigenLift> lifts;  // level-major, deglex within a level
  bool spans = false;
  std::vector<bool> convergence_consistent;  // per lift, at radius r
};

/// Lifts every monomial basis class of every graded piece mod I^n and
/// attaches a convergence report at radius r for each lift. Refuses
/// (DomainError) when r <= r_alpha_threshold(e): the theorem's hypothesis
/// is unmet.
DenseEigenbasis dense_eigenbasis(const Endomorphism& e, int n,
                                 const GaussParams& p);

/// Integral l-adic period: the least b such that l^b clears every
/// denominator incurred lifting level-i classes to level m.
struct PeriodRecord {
  int i = 0;
  int m = 0;
  int b = 0;      // observed
  int bound = 0;  // v(i, m, base); b <= bound always
};

PeriodRecord integral_period(const Endomorphism& e, int i, int m);

}  // namespace lgr
