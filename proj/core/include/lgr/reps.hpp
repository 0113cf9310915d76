#pragma once

#include "lgr/eigenlift.hpp"
#include "lgr/matrix.hpp"

namespace lgr {

/// A matrix representation of the free pro-l group: invertible images over
/// Z_l per generator.
class MatrixRep {
 public:
  MatrixRep(AlphabetPtr alphabet, long prime, int dim,
            std::vector<PadicMatrix> images);
  static MatrixRep from_integer_images(
      AlphabetPtr alphabet, long prime,
      const std::vector<std::vector<std::vector<mpz_class>>>& images,
      int precision = kDefaultPrecision);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  long prime() const { return prime_; }
  int dim() const { return dim_; }
  const PadicMatrix& image(int gen) const { return images_.at(gen); }
  const std::vector<PadicMatrix>& images() const { return images_; }

  /// rho extended to a word. Letters with exact integer exponents use exact
  /// matrix powers; l-adic exponents fall back to the binomial series, which
  /// requires the image to be trivial mod l.
  PadicMatrix evaluate_word(const GroupWord& w) const;

 private:
  AlphabetPtr alphabet_;
  long prime_;
  int dim_;
  std::vector<PadicMatrix> images_;
};

/// Largest m with every generator image congruent to the identity mod l^m
/// (0 when some image is not). Throws PrecisionError if the answer would
/// exceed the carried precision.
int triviality_exponent(const MatrixRep& rho);

/// Whether every image is the identity mod l^N.
bool is_trivial_mod(const MatrixRep& rho, int N);

/// Image of a truncated series under the extension of rho to the convergent
/// group ring of radius l^(-r): sum over stored monomials of a_I rho(T^I),
/// rho(T_i) = rho(gamma_i) - 1.
struct SeriesEvaluation {
  PadicMatrix value;
  /// Observed Gauss-norm exponent of the input (nullopt for zero).
  std::optional<Rational> gauss_exponent;
  /// Valuation lower bound for everything the truncation discarded:
  /// gauss_exponent + (m - r) * truncation.
  std::optional<Rational> tail_exponent;
  /// |eval(a)| <= |a|_r, i.e. min entry valuation >= gauss exponent (C = 1).
  bool bounded = false;
};

SeriesEvaluation evaluate_series(const MatrixRep& rho, const NcSeries& a,
                                 const GaussParams& p);

/// Unipotence via span nilpotency: the algebra A generated by
/// {rho(gamma_i) - 1} satisfies A^dim = 0 iff rho is unipotent. Stays
/// inside Q_l arithmetic (no eigenvalues needed); the eigenvalue route is a
/// test oracle only.
struct UnipotenceCertificate {
  bool unipotent = false;
  /// Least j with A^j = 0 (unipotent case).
  int nilpotency_degree = 0;
  /// dim of the span of length-j products, j = 1, 2, ...
  std::vector<int> span_dims;
  /// Non-unipotent case: a word and a power whose trace is a known nonzero
  /// scalar (an eigenvalue != 1 witness).
  std::string witness_word;
  int witness_power = 0;
  std::optional<PadicScalar> witness_trace;
};

UnipotenceCertificate is_unipotent(const MatrixRep& rho);

/// Socle filtration of the standard module over the enveloping algebra of
/// the image, radical computed as the trace-form kernel (characteristic
/// zero). chain[j] holds a basis of the j-th term as columns, in ambient
/// coordinates; the last term is the full space.
struct SocleFiltration {
  std::vector<PadicMatrix> chain;
  std::vector<int> dims;
  int radical_dim = 0;
  bool quotients_semisimple = false;
};

SocleFiltration socle_filtration(const MatrixRep& rho);

/// The explicit punctured-line bound: s the order of q mod l (mod 4 for
/// l = 2), epsilon = [l == 2], and N_min the least integer strictly above
/// (1/s)(v_l(q^s - 1) + 1/(l-1) + epsilon).
struct BoundSpec {
  long ell = 0;
  mpz_class q;
  int s = 0;
  int epsilon = 0;
  Rational bound{0};
  int n_min = 0;
};

BoundSpec bound_N(long ell, const mpz_class& q);

/// Desk-scale certification: given rho trivial mod l^N with N above the
/// radius threshold of the action, and a target conjugation M with
/// rho(sigma(gamma)) = M rho(gamma) M^(-1), the evaluation kills every
/// weight level whose eigenvalue misses the spectrum of conjugation by M —
/// which forces unipotence. Verdicts are cross-checked against
/// is_unipotent.
struct CertifyReport {
  enum class Verdict { unipotent, equivariance_failure, hypothesis_unmet };
  Verdict verdict = Verdict::hypothesis_unmet;
  Rational threshold{0};
  Rational r{0};
  int triviality = 0;
  std::vector<PadicScalar> conjugation_eigenvalues;
  int i0 = 0;               // least level from which evaluation must vanish
  bool kills_verified = false;
  bool matches_is_unipotent = false;
  std::string detail;
};

CertifyReport certify_pipeline(const MatrixRep& rho, const Endomorphism& e,
                               const PadicMatrix& target, int N);

/// The genus-2 surface-group fixture a1 -> A, b1 -> B, a2 -> B, b2 -> A on
/// the weight-1 alphabet (a1, b1, a2, b2); the surface relation
/// [A,B][B,A] = 1 holds identically and is asserted.
MatrixRep genus2_fixture(const std::vector<std::vector<mpz_class>>& A,
                         const std::vector<std::vector<mpz_class>>& B,
                         long ell, int N,
                         int precision = kDefaultPrecision);

}  // namespace lgr
