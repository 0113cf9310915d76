#pragma once

#include <vector>

#include "lgr/padic.hpp"

namespace lgr {

/// Dense matrix over PadicScalar. Small sizes only (desk scale).
class PadicMatrix {
 public:
  PadicMatrix(int rows, int cols, long prime);
  static PadicMatrix identity(int n, long prime,
                              int precision = kDefaultPrecision);
  static PadicMatrix from_integers(
      const std::vector<std::vector<mpz_class>>& entries, long prime,
      int precision = kDefaultPrecision);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long prime() const { return prime_; }

  const PadicScalar& at(int i, int j) const;
  void set(int i, int j, PadicScalar v);

  friend PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b);
  friend PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b);
  friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b);
  PadicMatrix operator-() const;
  PadicMatrix scalar_mul(const PadicScalar& c) const;
  PadicMatrix transpose() const;

  /// Entrywise congruence mod l^k.
  bool equals_mod(const PadicMatrix& other, int k) const;

  /// Minimum valuation lower bound over entries (the -log_l of the sup
  /// norm); kInfinitePrecision for the zero matrix.
  int min_valuation_bound() const;
  /// Minimum exact valuation over known entries; nullopt if none is known.
  std::optional<int> min_known_valuation() const;

  /// PadicScalar trace.
  PadicScalar trace() const;

  std::string to_string() const;

 private:
  int rows_, cols_;
  long prime_;
  std::vector<PadicScalar> data_;
};

/// Result of valuation-pivoted Gauss elimination. Pivots are chosen with
/// minimal valuation (unit-most entry first) so the recorded pivot
/// valuations bound every denominator introduced; the spec's linear solves
/// are "decided" only when every pivot is a known scalar, which this
/// procedure enforces by construction — entries that are merely zero to a
/// floor are never pivoted on, and the smallest such floor among discarded
/// residuals is reported.
struct Elimination {
  int rank = 0;
  std::vector<int> pivot_columns;
  std::vector<int> pivot_valuations;
  int min_residual_floor = kInfinitePrecision;
  PadicMatrix reduced;  // row-reduced echelon form

  Elimination(int rows, int cols, long prime) : reduced(rows, cols, prime) {}
};

Elimination eliminate(PadicMatrix m);

/// Columns spanning the kernel (free-variable basis from the echelon form).
PadicMatrix kernel_basis(const PadicMatrix& m);

/// Gauss-Jordan inverse; throws DomainError if not invertible at precision.
PadicMatrix inverse(const PadicMatrix& m);

/// True when the matrix is invertible over Z_l (unit determinant): requires
/// integral entries; decided modulo l.
bool is_integrally_invertible(const PadicMatrix& m);

}  // namespace lgr
