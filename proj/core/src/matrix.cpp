#include "lgr/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace lgr {

namespace {
void check_shapes_mul(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.cols() != b.rows() || a.prime() != b.prime())
    throw DomainError("matrix shape/prime mismatch");
}
void check_shapes_add(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.prime() != b.prime())
    throw DomainError("matrix shape/prime mismatch");
}
}  // namespace

PadicMatrix::PadicMatrix(int rows, int cols, long prime)
    : rows_(rows), cols_(cols), prime_(prime),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols),
            PadicScalar::zero(prime)) {
  if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
}

PadicMatrix PadicMatrix::identity(int n, long prime, int precision) {
  PadicMatrix m(n, n, prime);
  for (int i = 0; i < n; ++i) m.set(i, i, PadicScalar::one(prime, precision));
  return m;
}

PadicMatrix PadicMatrix::from_integers(
    const std::vector<std::vector<mpz_class>>& entries, long prime,
    int precision) {
  int rows = static_cast<int>(entries.size());
  int cols = rows ? static_cast<int>(entries[0].size()) : 0;
  PadicMatrix m(rows, cols, prime);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(entries[i].size()) != cols)
      throw DomainError("ragged matrix literal");
    for (int j = 0; j < cols; ++j)
      m.set(i, j, PadicScalar::from_integer(entries[i][j], prime, precision));
  }
  return m;
}

const PadicScalar& PadicMatrix::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DomainError("matrix index out of range");
  return data_[static_cast<size_t>(i) * cols_ + j];
}

void PadicMatrix::set(int i, int j, PadicScalar v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DomainError("matrix index out of range");
  if (v.prime() != prime_) throw DomainError("prime mismatch");
  data_[static_cast<size_t>(i) * cols_ + j] = std::move(v);
}

PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b) {
  check_shapes_add(a, b);
  PadicMatrix r(a.rows(), a.cols(), a.prime());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j) + b.at(i, j));
  return r;
}

PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b) {
  return a + (-b);
}

PadicMatrix PadicMatrix::operator-() const {
  PadicMatrix r(rows_, cols_, prime_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, -at(i, j));
  return r;
}

PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
  check_shapes_mul(a, b);
  PadicMatrix r(a.rows(), b.cols(), a.prime());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      PadicScalar s = PadicScalar::zero(a.prime());
      for (int k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
      r.set(i, j, s);
    }
  return r;
}

PadicMatrix PadicMatrix::scalar_mul(const PadicScalar& c) const {
  PadicMatrix r(rows_, cols_, prime_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) * c);
  return r;
}

PadicMatrix PadicMatrix::transpose() const {
  PadicMatrix r(cols_, rows_, prime_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

bool PadicMatrix::equals_mod(const PadicMatrix& other, int k) const {
  check_shapes_add(*this, other);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).equals_mod(other.at(i, j), k)) return false;
  return true;
}

int PadicMatrix::min_valuation_bound() const {
  int v = kInfinitePrecision;
  for (const auto& x : data_) v = std::min(v, x.valuation_lower_bound());
  return v;
}

std::optional<int> PadicMatrix::min_known_valuation() const {
  std::optional<int> v;
  for (const auto& x : data_)
    if (x.is_known() && (!v || x.valuation() < *v)) v = x.valuation();
  return v;
}

PadicScalar PadicMatrix::trace() const {
  if (rows_ != cols_) throw DomainError("trace of a non-square matrix");
  PadicScalar s = PadicScalar::zero(prime_);
  for (int i = 0; i < rows_; ++i) s = s + at(i, i);
  return s;
}

std::string PadicMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "\n[" : "[");
    for (int j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  return os.str();
}

Elimination eliminate(PadicMatrix m) {
  Elimination out(m.rows(), m.cols(), m.prime());
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    // pivot: known entry of minimal valuation in this column at/below `row`
    int pivot = -1;
    int best_val = 0;
    for (int i = row; i < m.rows(); ++i) {
      const PadicScalar& x = m.at(i, col);
      if (!x.is_known()) continue;
      if (pivot < 0 || x.valuation() < best_val) {
        pivot = i;
        best_val = x.valuation();
      }
    }
    if (pivot < 0) {
      for (int i = row; i < m.rows(); ++i)
        out.min_residual_floor =
            std::min(out.min_residual_floor, m.at(i, col).precision());
      continue;
    }
    if (pivot != row)
      for (int j = 0; j < m.cols(); ++j) {
        PadicScalar tmp = m.at(pivot, j);
        m.set(pivot, j, m.at(row, j));
        m.set(row, j, std::move(tmp));
      }
    PadicScalar inv = m.at(row, col).inv();
    for (int j = col; j < m.cols(); ++j) m.set(row, j, m.at(row, j) * inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      PadicScalar f = m.at(i, col);
      if (f.is_zero() && f.precision() == kInfinitePrecision) continue;
      for (int j = col; j < m.cols(); ++j)
        m.set(i, j, m.at(i, j) - f * m.at(row, j));
    }
    out.pivot_columns.push_back(col);
    out.pivot_valuations.push_back(best_val);
    ++row;
  }
  out.rank = row;
  out.reduced = std::move(m);
  return out;
}

PadicMatrix kernel_basis(const PadicMatrix& m) {
  Elimination e = eliminate(m);
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (std::find(e.pivot_columns.begin(), e.pivot_columns.end(), j) ==
        e.pivot_columns.end())
      free_cols.push_back(j);
  PadicMatrix basis(m.cols(), static_cast<int>(free_cols.size()), m.prime());
  for (size_t b = 0; b < free_cols.size(); ++b) {
    int fc = free_cols[b];
    basis.set(fc, static_cast<int>(b), PadicScalar::one(m.prime()));
    for (size_t r = 0; r < e.pivot_columns.size(); ++r)
      basis.set(e.pivot_columns[r], static_cast<int>(b),
                -e.reduced.at(static_cast<int>(r), fc));
  }
  return basis;
}

PadicMatrix inverse(const PadicMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of non-square matrix");
  int n = m.rows();
  PadicMatrix aug(n, 2 * n, m.prime());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, PadicScalar::one(m.prime(), kDefaultPrecision));
  }
  Elimination e = eliminate(std::move(aug));
  if (e.rank != n)
    throw DomainError("matrix not invertible at the carried precision");
  for (int r = 0; r < n; ++r)
    if (e.pivot_columns[r] != r)
      throw DomainError("matrix not invertible at the carried precision");
  PadicMatrix inv(n, n, m.prime());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, e.reduced.at(i, n + j));
  return inv;
}

bool is_integrally_invertible(const PadicMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const int n = m.rows();
  // determinant mod l of the entry residues
  const long p = m.prime();
  std::vector<std::vector<long>> a(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j).is_known() && m.at(i, j).valuation() < 0) return false;
      a[i][j] = mpz_class(m.at(i, j).residue(1)).get_si();
    }
  long det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (a[i][col] % p != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    long inv = 1;
    for (long x = 1; x < p; ++x)
      if ((a[col][col] * x) % p == 1) {
        inv = x;
        break;
      }
    det = (det * a[col][col]) % p;
    for (int i = col + 1; i < n; ++i) {
      long f = (a[i][col] * inv) % p;
      for (int j = col; j < n; ++j)
        a[i][j] = ((a[i][j] - f * a[col][j]) % p + p * p) % p;
    }
  }
  return det % p != 0;
}

}  // namespace lgr
