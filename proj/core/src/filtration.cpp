#include "lgr/filtration.hpp"

#include <algorithm>

namespace lgr {

GaussParams::GaussParams(Rational radius_exponent) : r(radius_exponent) {
  if (!(r > Rational(0))) throw DomainError("Gauss radius exponent must be > 0");
  if (r.denominator() > 64)
    throw DomainError("Gauss radius denominator must be <= 64");
}

std::optional<int> iadic_valuation(const NcSeries& a, int n) {
  if (n > a.truncation())
    throw DomainError("degree exceeds the truncation of the series");
  if (n < 1) throw DomainError("degree must be >= 1");
  std::optional<int> min_known;
  int min_floor = kInfinitePrecision;
  for (const auto& [m, c] : a.coefficients()) {
    if (m.degree() >= n) continue;
    if (c.is_known()) {
      if (!min_known || c.valuation() < *min_known) min_known = c.valuation();
    } else {
      min_floor = std::min(min_floor, c.precision());
    }
  }
  if (!min_known) {
    if (min_floor == kInfinitePrecision) return std::nullopt;  // zero class
    throw PrecisionError(
        "class is zero only modulo l^" + std::to_string(min_floor) +
        "; its I-adic valuation below degree " + std::to_string(n) +
        " is undecided");
  }
  if (min_floor < *min_known)
    throw PrecisionError(
        "a coefficient zero floor (" + std::to_string(min_floor) +
        ") lies below the least known valuation (" +
        std::to_string(*min_known) + "); v_n undecided");
  return min_known;
}

GaussNormResult gauss_norm(const NcSeries& a, const GaussParams& p) {
  GaussNormResult out;
  std::optional<Rational> min_floor_bound;
  Monomial floor_witness;
  for (const auto& [m, c] : a.coefficients()) {
    Rational deg_term = Rational(m.degree()) * p.r;
    if (c.is_known()) {
      Rational e = Rational(c.valuation()) + deg_term;
      if (!out.exponent || e < *out.exponent) {
        out.exponent = e;
        out.witness = m;
      }
    } else if (c.precision() != kInfinitePrecision) {
      Rational bound = Rational(c.precision()) + deg_term;
      if (!min_floor_bound || bound < *min_floor_bound) {
        min_floor_bound = bound;
        floor_witness = m;
      }
    }
  }
  if (min_floor_bound && (!out.exponent || *min_floor_bound < *out.exponent))
    throw PrecisionError(
        "Gauss norm undecided: coefficient of " +
        floor_witness.to_string(*a.alphabet()) +
        " is only known to vanish to a floor below the candidate minimum");
  return out;
}

int weight_level(const Monomial& m, const Alphabet& alphabet) {
  return m.weight(alphabet);
}

bool in_weight(const NcSeries& a, int k) {
  for (const auto& [m, c] : a.coefficients())
    if (c.is_known() && m.weight(*a.alphabet()) < k) return false;
  return true;
}

InclusionCheck check_w_iadic_inclusions(const Alphabet& alphabet, int n,
                                        int degree_bound) {
  if (n < 1) throw DomainError("n must be >= 1");
  InclusionCheck out;
  std::vector<Monomial> all = monomials_below_degree(alphabet, degree_bound + 1);
  for (const auto& m : all) {
    int w = m.weight(alphabet);
    // I^n subset W^(-n): degree >= n must imply weight >= n.
    if (m.degree() >= n && w < n) {
      out.ok = false;
      out.witness = m;
      return out;
    }
    // W^(-2n-1) subset I^n: weight >= 2n+1 must imply degree >= n.
    if (w >= 2 * n + 1 && m.degree() < n) {
      out.ok = false;
      out.witness = m;
      return out;
    }
  }
  out.ok = true;
  return out;
}

FiltrationReport convergence_report(const NcSeries& a, const GaussParams& p) {
  FiltrationReport rep;
  rep.r = p.r;
  const int n = a.truncation();
  for (int m = 1; m <= n; ++m) {
    auto v = iadic_valuation(a, m);
    rep.v_table.push_back(v);
    if (v)
      rep.trend.push_back(Rational(*v) + Rational(m) * p.r);
    else
      rep.trend.push_back(std::nullopt);
  }
  int max_level = 2 * (n - 1);
  for (int k = 0; k <= max_level; ++k) {
    int dim = 0;
    for (const auto& m : monomials_below_degree(*a.alphabet(), n))
      if (m.weight(*a.alphabet()) >= k) ++dim;
    rep.w_dims.push_back(dim);
  }

  // v_m is nonincreasing in m, so the +inf entries form a prefix (degrees
  // below the support). Judge growth on the finite suffix only.
  size_t first_finite = 0;
  while (first_finite < rep.trend.size() && !rep.trend[first_finite])
    ++first_finite;
  size_t count = rep.trend.size() - first_finite;

  rep.monotone_tail = true;
  size_t tail_start = first_finite + count / 2;
  for (size_t i = tail_start; i + 1 < rep.trend.size(); ++i)
    if (!(*rep.trend[i] <= *rep.trend[i + 1])) rep.monotone_tail = false;

  bool grows =
      count <= 1 || *rep.trend[first_finite] < *rep.trend.back();
  rep.consistent = rep.monotone_tail && grows;
  rep.note =
      "verdict from truncated data: growth consistent with membership is "
      "necessary, not sufficient";
  return rep;
}

}  // namespace lgr
