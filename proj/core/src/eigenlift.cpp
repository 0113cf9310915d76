#include "lgr/eigenlift.hpp"

#include <algorithm>
#include <map>

namespace lgr {

int multiplicative_order(const mpz_class& q, long ell) {
  if (ell < 2) throw DomainError("prime must be >= 2");
  if (q % ell == 0) throw DomainError("q must be an l-adic unit");
  mpz_class mod = ell == 2 ? mpz_class(4) : mpz_class(ell);
  mpz_class x = q % mod;
  if (x < 0) x += mod;
  mpz_class acc = x;
  int r = 1;
  while (acc != 1) {
    acc = (acc * x) % mod;
    ++r;
    if (r > ell + 2) throw DomainError("order computation diverged");
  }
  return r;
}

namespace {

mpz_class pow_int(const mpz_class& q, long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

/// v_l(q^r - 1) for r the multiplicative order; throws when q^r = 1.
int base_valuation(const mpz_class& q, long ell, int r) {
  mpz_class qr1 = pow_int(q, r) - 1;
  if (qr1 == 0)
    throw DomainError("q is a root of unity: q^" + std::to_string(r) +
                      " = 1, so v_l(q^k - 1) is unbounded");
  return val_int(qr1, ell);
}

}  // namespace

int vl_qpow(const mpz_class& q, long k, long ell) {
  if (k < 1) throw DomainError("k must be >= 1");
  int r = multiplicative_order(q, ell);
  if (k % r != 0) return ell == 2 ? 1 : 0;
  int v0 = base_valuation(q, ell, r);
  return v0 + val_int(mpz_class(k / r), ell);
}

int v_bound(int i, int m, const mpz_class& alpha, long ell) {
  if (m < i + 1) throw DomainError("v_bound requires m >= i + 1");
  int total = 0;
  for (int s = 1; s <= m - i - 1; ++s) total += vl_qpow(alpha, s, ell);
  return total;
}

Rational c_bound(const mpz_class& q, long ell, long k) {
  if (k < 0) throw DomainError("k must be >= 0");
  int r = multiplicative_order(q, ell);
  int v0 = base_valuation(q, ell, r);
  Rational k_over_r(k, r);
  if (ell != 2) return k_over_r * (Rational(v0) + Rational(1, ell - 1));
  return k_over_r * (Rational(v0) + Rational(1, ell - 1) + Rational(1)) +
         Rational(1, r);
}

Rational r_alpha_threshold(const Endomorphism& e) {
  if (!e.quasi_scalar_base())
    throw DomainError("endomorphism carries no quasi-scalar unit");
  const mpz_class& base = *e.quasi_scalar_base();
  long ell = e.prime();
  if (e.alphabet()->all_weight(2)) return c_bound(base * base, ell, 1);
  if (e.alphabet()->all_weight(1)) return c_bound(base, ell, 1);
  return Rational(2) * c_bound(base, ell, 1);
}

namespace {

/// Scalar of the graded action at one level, verified entrywise against the
/// computed graded matrix. Returns nullopt for an empty level.
std::optional<PadicScalar> verified_level_scalar(const Endomorphism& e, int k,
                                                 int n) {
  PadicMatrix g = graded_matrix(e, k, n);
  if (g.rows() == 0) return std::nullopt;
  std::optional<PadicScalar> expected = e.expected_eigenvalue(k);
  PadicScalar mu = expected ? *expected : g.at(0, 0);
  if (!mu.is_known())
    throw DomainError("graded action scalar is indistinguishable from zero");
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      const PadicScalar& want = i == j ? mu : PadicScalar::zero(e.prime());
      if (!g.at(i, j).indistinguishable(want))
        throw DomainError("graded action at level " + std::to_string(k) +
                          " is not scalar");
    }
  return mu;
}

std::vector<PadicScalar> mat_vec(const PadicMatrix& mat,
                                 const std::vector<PadicScalar>& y) {
  const long p = mat.prime();
  std::vector<PadicScalar> out(y.size(), PadicScalar::zero(p));
  for (size_t j = 0; j < y.size(); ++j) {
    const PadicScalar& yj = y[j];
    if (yj.is_zero() && yj.precision() == kInfinitePrecision) continue;
    for (int i = 0; i < mat.rows(); ++i) {
      const PadicScalar& a = mat.at(i, static_cast<int>(j));
      if (a.is_zero() && a.precision() == kInfinitePrecision) continue;
      out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] + a * yj;
    }
  }
  return out;
}

/// Corrects the seed through weight levels (level, max_level]: at level m
/// the graded residual is divided by (mu_m - mu). Verifies at the end that
/// the residual vanishes on every level <= max_level.
std::vector<PadicScalar> lift_through_levels(const Endomorphism& e,
                                             const EndomorphismMatrix& fm,
                                             const NcSeries& seed, int level,
                                             int max_level,
                                             const PadicScalar& mu) {
  const long p = e.prime();
  std::vector<PadicScalar> y(fm.basis.size(), PadicScalar::zero(p));
  for (const auto& [m, c] : seed.coefficients())
    y[static_cast<size_t>(fm.index_of(m))] = c;

  for (int m = level + 1; m <= max_level; ++m) {
    std::vector<int> idx;
    for (size_t j = 0; j < fm.basis.size(); ++j)
      if (fm.weights[j] == m) idx.push_back(static_cast<int>(j));
    if (idx.empty()) continue;

    std::vector<PadicScalar> sy = mat_vec(fm.matrix, y);
    bool any = false;
    std::vector<PadicScalar> res;
    res.reserve(idx.size());
    for (int row : idx) {
      PadicScalar s = sy[static_cast<size_t>(row)] -
                      mu * y[static_cast<size_t>(row)];
      if (s.is_known()) any = true;
      res.push_back(std::move(s));
    }
    if (!any) continue;

    std::optional<PadicScalar> mu_m = e.expected_eigenvalue(m);
    if (!mu_m)
      throw DomainError(
          "nonzero residual at a level with no declared eigenvalue");
    PadicScalar denom = *mu_m - mu;
    if (denom.is_zero())
      throw DomainError("eigenvalue collision at level " + std::to_string(m) +
                        ": the graded scalars coincide at precision");
    for (size_t t = 0; t < idx.size(); ++t) {
      size_t row = static_cast<size_t>(idx[t]);
      y[row] = y[row] - res[t] / denom;
    }
  }

  std::vector<PadicScalar> sy = mat_vec(fm.matrix, y);
  for (size_t j = 0; j < y.size(); ++j) {
    if (fm.weights[j] > max_level) continue;
    PadicScalar r = sy[j] - mu * y[j];
    if (r.is_known())
      throw Error("internal: residual survives at level " +
                  std::to_string(fm.weights[j]));
  }
  return y;
}

void validate_seed(const Endomorphism& e, const NcSeries& seed, int level,
                   int n) {
  check_same_alphabet(*e.alphabet(), *seed.alphabet());
  if (seed.prime() != e.prime()) throw DomainError("prime mismatch");
  if (seed.structurally_zero()) throw DomainError("zero seed");
  if (!seed.integral()) throw DomainError("seed must be integral");
  for (const auto& [m, c] : seed.coefficients()) {
    if (c.is_known() && m.weight(*e.alphabet()) != level)
      throw DomainError("seed is not homogeneous of weight " +
                        std::to_string(level));
    if (m.degree() >= n) throw DomainError("seed exceeds the truncation");
  }
}

mpz_class require_base(const Endomorphism& e) {
  if (!e.quasi_scalar_base())
    throw DomainError(
        "lifting requires an endomorphism with quasi-scalar data");
  mpz_class base = *e.quasi_scalar_base();
  long ell = e.prime();
  mpz_class mod = ell == 2 ? 4 : ell;
  mpz_class r = base % mod;
  if (r < 0) r += mod;
  if (r != 1)
    throw DomainError(
        "lifting requires base = 1 mod l (mod 4 for l = 2) so that "
        "eigenvalue separations carry the exact formula valuation");
  return base;
}

EigenLift lift_with_matrix(const Endomorphism& e, const EndomorphismMatrix& fm,
                           const NcSeries& seed, int level, int n) {
  validate_seed(e, seed, level, n);
  mpz_class base = require_base(e);
  std::optional<PadicScalar> mu = e.expected_eigenvalue(level);
  if (!mu) throw DomainError("seed level carries no eigenvalue");

  const int max_level = 2 * (n - 1);
  std::vector<PadicScalar> y =
      lift_through_levels(e, fm, seed, level, max_level, *mu);
  NcSeries lift(e.alphabet(), e.prime(), n);
  for (size_t j = 0; j < fm.basis.size(); ++j)
    lift.set_coefficient(fm.basis[j], y[j]);

  EigenLift out{level, seed, std::move(lift), *mu, {}, {}};
  for (int m = 1; m <= n; ++m) {
    out.denominator_profile.push_back(iadic_valuation(out.lift, m));
    int cap = 2 * m >= level + 1 ? v_bound(level, 2 * m, base, e.prime()) : 0;
    out.bound_profile.push_back(cap);
    const auto& v = out.denominator_profile.back();
    if (v && -*v > cap)
      throw Error("internal: denominator cap violated (v_" +
                  std::to_string(m) + " = " + std::to_string(*v) + ", cap " +
                  std::to_string(cap) + ")");
  }
  return out;
}

}  // namespace

SemisimpleReport check_semisimple(const Endomorphism& e, int n) {
  SemisimpleReport rep;
  const int max_level = 2 * (n - 1);

  // graded-scalar precondition, and the eigenvalue carried by each level
  std::map<int, PadicScalar> level_scalar;
  for (int k = 0; k <= max_level; ++k) {
    if (max_degree_of_weight(*e.alphabet(), k) >= n) continue;
    auto mu = verified_level_scalar(e, k, n);
    if (mu) level_scalar.emplace(k, *mu);
  }

  EndomorphismMatrix full = full_matrix(e, n);
  rep.total_dimension = full.matrix.rows();

  std::vector<Eigenspace> spaces;
  for (const auto& [k, mu] : level_scalar) {
    bool merged = false;
    for (auto& sp : spaces)
      if (sp.eigenvalue.indistinguishable(mu)) {
        sp.levels.push_back(k);
        merged = true;
        break;
      }
    if (!merged) spaces.push_back({mu, {k}, 0});
  }

  int dim_sum = 0;
  for (auto& sp : spaces) {
    PadicMatrix shifted = full.matrix;
    for (int i = 0; i < shifted.rows(); ++i)
      shifted.set(i, i, shifted.at(i, i) - sp.eigenvalue);
    Elimination el = eliminate(shifted);
    if (el.min_residual_floor < 8)
      throw PrecisionError("rank of an eigenspace solve undecided");
    rep.min_residual_floor =
        std::min(rep.min_residual_floor, el.min_residual_floor);
    sp.dimension = shifted.cols() - el.rank;
    dim_sum += sp.dimension;
  }
  rep.eigenspaces = std::move(spaces);
  rep.diagonalizable = dim_sum == rep.total_dimension;
  return rep;
}

EigenLift lift_eigenvector(const Endomorphism& e, const NcSeries& seed,
                           int level, int n) {
  EndomorphismMatrix fm = full_matrix(e, n);
  return lift_with_matrix(e, fm, seed, level, n);
}

DenseEigenbasis dense_eigenbasis(const Endomorphism& e, int n,
                                 const GaussParams& p) {
  DenseEigenbasis out;
  out.r = p.r;
  out.threshold = r_alpha_threshold(e);
  if (!(p.r > out.threshold))
    throw DomainError("radius exponent r = " + to_string(p.r) +
                      " does not exceed the threshold r_alpha = " +
                      to_string(out.threshold) +
                      "; the dense-eigenbasis hypothesis is unmet");

  EndomorphismMatrix fm = full_matrix(e, n);
  const int max_level = 2 * (n - 1);
  for (int k = 0; k <= max_level; ++k) {
    if (max_degree_of_weight(*e.alphabet(), k) >= n) continue;
    for (const auto& m : monomials_of_weight(*e.alphabet(), k)) {
      if (m.degree() >= n) continue;
      NcSeries seed = NcSeries::monomial(e.alphabet(), e.prime(), n, m);
      EigenLift lift = lift_with_matrix(e, fm, seed, k, n);
      // triangularity: the level-k part of the lift is exactly the seed
      if (!in_weight(lift.lift - seed, k + 1))
        throw Error("internal: lift deviates from its seed at its own level");
      FiltrationReport rep = convergence_report(lift.lift, p);
      out.convergence_consistent.push_back(rep.consistent);
      out.lifts.push_back(std::move(lift));
    }
  }
  out.spans = out.lifts.size() ==
              monomials_below_degree(*e.alphabet(), n).size();
  if (!out.spans)
    throw Error("internal: graded seeds do not exhaust the monomial basis");
  return out;
}

PeriodRecord integral_period(const Endomorphism& e, int i, int m) {
  if (m <= i) throw DomainError("integral period requires m > i");
  mpz_class base = require_base(e);

  // smallest ambient truncation that sees everything below level m
  int n = 1;
  for (int w = 0; w < m; ++w)
    n = std::max(n, max_degree_of_weight(*e.alphabet(), w) + 1);
  if (n > e.truncation())
    throw DomainError("endomorphism truncation too small for this period");

  PeriodRecord rec{i, m, 0, v_bound(i, m, base, e.prime())};
  std::optional<PadicScalar> mu = e.expected_eigenvalue(i);
  if (!mu) return rec;  // empty level: nothing to lift

  EndomorphismMatrix fm = full_matrix(e, n);
  for (const auto& seed_mon : monomials_of_weight(*e.alphabet(), i)) {
    if (seed_mon.degree() >= n) continue;
    NcSeries seed = NcSeries::monomial(e.alphabet(), e.prime(), n, seed_mon);
    std::vector<PadicScalar> y =
        lift_through_levels(e, fm, seed, i, m - 1, *mu);
    for (size_t j = 0; j < y.size(); ++j) {
      if (!y[j].is_known()) continue;
      if (fm.weights[j] >= m) continue;  // the class is taken mod W^-m
      rec.b = std::max(rec.b, -y[j].valuation());
    }
  }
  if (rec.b > rec.bound)
    throw Error("internal: observed period exceeds the proven cap");
  return rec;
}

}  // namespace lgr
