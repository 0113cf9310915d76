#pragma once

#include <optional>

#include "lgr/filtration.hpp"
#include "lgr/matrix.hpp"
#include "lgr/ncseries.hpp"

namespace lgr {

/// A continuous ring endomorphism of the truncated group ring, given by
/// substitution: each generator maps to a group-like series. Models the
/// Galois actions the downstream algorithms consume; the artifact takes
/// these as input data and never derives them from arithmetic.
///
/// When the action is quasi-scalar — it acts on the level-k piece of the
/// weight grading by base^(k/step) — the pair (base, step) is recorded so
/// that the lifting bounds can be computed. step is 2 for the all-weight-2
/// models gamma |-> gamma^q (the action multiplies each weight-2 class by
/// q), and 1 for user-supplied mixed-weight actions with unit alpha.
class Endomorphism {
 public:
  static Endomorphism identity(AlphabetPtr alphabet, long prime,
                               int truncation,
                               int precision = kDefaultPrecision);

  /// Validates: every image group-like (augmentation 1), integral, and in
  /// 1 + W^(-w_i) for its generator's weight w_i.
  static Endomorphism from_images(AlphabetPtr alphabet, long prime,
                                  int truncation, std::vector<NcSeries> images,
                                  std::string label = "custom",
                                  std::optional<mpz_class> quasi_scalar_base =
                                      std::nullopt,
                                  int quasi_scalar_step = 1);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  long prime() const { return prime_; }
  int truncation() const { return truncation_; }
  const std::string& label() const { return label_; }
  const NcSeries& image(int gen) const { return images_.at(gen); }
  const std::vector<NcSeries>& images() const { return images_; }
  /// Source group word of the image, when the action came from words.
  const std::optional<GroupWord>& image_word(int gen) const {
    return image_words_.at(gen);
  }

  const std::optional<mpz_class>& quasi_scalar_base() const { return base_; }
  int quasi_scalar_step() const { return step_; }

  /// The scalar by which a quasi-scalar action is expected to act on the
  /// weight-level-k graded piece: base^(k/step). nullopt when no base is
  /// declared or when step does not divide k (an empty level).
  std::optional<PadicScalar> expected_eigenvalue(
      int level, int precision = kDefaultPrecision) const;

  friend Endomorphism sigma_cyclotomic(const mpz_class& q, AlphabetPtr alphabet,
                                       long prime, int truncation,
                                       int precision);
  friend Endomorphism sigma_ihara(const mpz_class& q,
                                  std::vector<GroupWord> conjugators,
                                  int truncation, int precision);

 private:
  Endomorphism(AlphabetPtr alphabet, long prime, int truncation)
      : alphabet_(std::move(alphabet)), prime_(prime), truncation_(truncation) {}

  AlphabetPtr alphabet_;
  long prime_;
  int truncation_;
  std::vector<NcSeries> images_;
  std::vector<std::optional<GroupWord>> image_words_;
  std::optional<mpz_class> base_;
  int step_ = 1;
  std::string label_;
};

/// gamma_i |-> gamma_i^q for an l-adic unit q, on an all-weight-2 alphabet
/// (the cyclotomic model of the punctured line).
Endomorphism sigma_cyclotomic(const mpz_class& q, AlphabetPtr alphabet,
                              long prime, int truncation,
                              int precision = kDefaultPrecision);

/// gamma_i |-> f_i gamma_i^q f_i^(-1) with per-generator conjugator words;
/// the graded action is unchanged by the conjugation.
Endomorphism sigma_ihara(const mpz_class& q, std::vector<GroupWord> conjugators,
                         int truncation, int precision = kDefaultPrecision);

/// The substitution extension applied to one series: the unique continuous
/// ring map with T_i |-> image_i - 1.
NcSeries apply(const Endomorphism& e, const NcSeries& a);

/// e1 after e2: images of e2 pushed through e1.
Endomorphism compose(const Endomorphism& e1, const Endomorphism& e2);

/// Matrix of the induced map on W^(-k)/W^(-k-1), in the deglex basis of
/// weight-k monomials. Requires the truncation to contain the whole level;
/// the level may be empty (0x0).
PadicMatrix graded_matrix(const Endomorphism& e, int k, int n);

/// The endomorphism as a matrix on the full space mod I^n, together with
/// the deglex monomial basis it is written in.
struct EndomorphismMatrix {
  std::vector<Monomial> basis;
  std::vector<int> weights;  // weight level per basis monomial
  PadicMatrix matrix;

  EndomorphismMatrix(int dim, long prime) : matrix(dim, dim, prime) {}
  int index_of(const Monomial& m) const;
};

EndomorphismMatrix full_matrix(const Endomorphism& e, int n);

}  // namespace lgr
