#include "lgr/endomorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace lgr {

namespace {

void validate_image(const NcSeries& img, const Alphabet& alphabet, int gen) {
  PadicScalar aug1 = img.augmentation().add_int(-1);
  if (aug1.is_known())
    throw DomainError("image of generator " + alphabet.name(gen) +
                      " is not group-like (augmentation != 1)");
  if (!img.integral())
    throw DomainError("image of generator " + alphabet.name(gen) +
                      " has a coefficient of negative valuation");
  NcSeries shifted = img;
  shifted.set_coefficient(Monomial(), aug1);
  if (!in_weight(shifted, alphabet.weight(gen)))
    throw DomainError("image of generator " + alphabet.name(gen) +
                      " does not lie in 1 + W^(-" +
                      std::to_string(alphabet.weight(gen)) + ")");
}

}  // namespace

Endomorphism Endomorphism::identity(AlphabetPtr alphabet, long prime,
                                    int truncation, int precision) {
  Endomorphism e(alphabet, prime, truncation);
  for (int i = 0; i < alphabet->rank(); ++i) {
    GroupWord w = GroupWord::generator(alphabet, prime, i);
    e.images_.push_back(magnus_embed(w, truncation, precision));
    e.image_words_.push_back(w);
  }
  e.base_ = mpz_class(1);
  e.step_ = 1;
  e.label_ = "identity";
  return e;
}

Endomorphism Endomorphism::from_images(AlphabetPtr alphabet, long prime,
                                       int truncation,
                                       std::vector<NcSeries> images,
                                       std::string label,
                                       std::optional<mpz_class> base,
                                       int step) {
  if (static_cast<int>(images.size()) != alphabet->rank())
    throw DomainError("one image per generator required");
  Endomorphism e(alphabet, prime, truncation);
  for (int i = 0; i < alphabet->rank(); ++i) {
    check_same_alphabet(*images[i].alphabet(), *alphabet);
    if (images[i].prime() != prime || images[i].truncation() < truncation)
      throw DomainError("image prime/truncation incompatible");
    NcSeries img = images[i].truncated(truncation);
    validate_image(img, *alphabet, i);
    e.images_.push_back(std::move(img));
    e.image_words_.push_back(std::nullopt);
  }
  if (base && *base % prime == 0)
    throw DomainError("quasi-scalar base must be an l-adic unit");
  if (step != 1 && step != 2) throw DomainError("quasi-scalar step must be 1 or 2");
  e.base_ = std::move(base);
  e.step_ = step;
  e.label_ = std::move(label);
  return e;
}

std::optional<PadicScalar> Endomorphism::expected_eigenvalue(
    int level, int precision) const {
  if (level == 0) return PadicScalar::one(prime_, precision);
  if (!base_) return std::nullopt;
  if (level % step_ != 0) return std::nullopt;
  int k = level / step_;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base_->get_mpz_t(), static_cast<unsigned long>(k));
  return PadicScalar::from_integer(p, prime_, precision);
}

namespace {

Endomorphism build_power_action(const mpz_class& q, AlphabetPtr alphabet,
                                long prime,
                                const std::vector<GroupWord>* conjugators,
                                int truncation, int precision,
                                std::string label) {
  if (!alphabet->all_weight(2))
    throw DomainError("cyclotomic-type actions need an all-weight-2 alphabet");
  if (q % prime == 0) throw DomainError("q must be an l-adic unit");
  Endomorphism e(alphabet, prime, truncation);
  for (int i = 0; i < alphabet->rank(); ++i) {
    GroupWord word = GroupWord::generator(alphabet, prime, i, q);
    if (conjugators) {
      const GroupWord& f = (*conjugators)[i];
      check_same_alphabet(*f.alphabet(), *alphabet);
      word = f.concat(word).concat(f.inverse());
    }
    NcSeries img = magnus_embed(word, truncation, precision);
    validate_image(img, *alphabet, i);
    e.images_.push_back(std::move(img));
    e.image_words_.push_back(std::move(word));
  }
  e.base_ = q;
  e.step_ = 2;
  e.label_ = std::move(label);
  return e;
}

}  // namespace

Endomorphism sigma_cyclotomic(const mpz_class& q, AlphabetPtr alphabet,
                              long prime, int truncation, int precision) {
  return build_power_action(q, alphabet, prime, nullptr, truncation, precision,
                            "cyclotomic q=" + q.get_str());
}

Endomorphism sigma_ihara(const mpz_class& q, std::vector<GroupWord> conjugators,
                         int truncation, int precision) {
  if (conjugators.empty())
    throw DomainError("sigma_ihara requires conjugators; use sigma_cyclotomic");
  AlphabetPtr alphabet = conjugators.front().alphabet();
  long prime = conjugators.front().prime();
  if (static_cast<int>(conjugators.size()) != alphabet->rank())
    throw DomainError("one conjugator per generator required");
  return build_power_action(q, alphabet, prime, &conjugators, truncation,
                            precision, "ihara q=" + q.get_str());
}

NcSeries apply(const Endomorphism& e, const NcSeries& a) {
  check_same_alphabet(*e.alphabet(), *a.alphabet());
  if (e.prime() != a.prime()) throw DomainError("prime mismatch");
  int n = std::min(e.truncation(), a.truncation());

  // T_i |-> image_i - 1
  std::vector<NcSeries> u;
  for (int i = 0; i < e.alphabet()->rank(); ++i) {
    NcSeries s = e.image(i).truncated(n);
    s.set_coefficient(Monomial(), s.augmentation().add_int(-1));
    u.push_back(std::move(s));
  }

  std::map<Monomial, NcSeries> cache;
  cache.emplace(Monomial(),
                NcSeries::one(e.alphabet(), e.prime(), n));
  std::function<const NcSeries&(const Monomial&)> image_of =
      [&](const Monomial& m) -> const NcSeries& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<std::uint8_t> w = m.word();
    std::uint8_t last = w.back();
    w.pop_back();
    const NcSeries& prefix = image_of(Monomial(std::move(w)));
    auto [ins, _] = cache.emplace(m, prefix * u[last]);
    return ins->second;
  };

  NcSeries out(e.alphabet(), e.prime(), n);
  for (const auto& [m, c] : a.coefficients()) {
    if (m.degree() >= n) continue;
    out = out + image_of(m).scalar_mul(c);
  }
  return out;
}

Endomorphism compose(const Endomorphism& e1, const Endomorphism& e2) {
  check_same_alphabet(*e1.alphabet(), *e2.alphabet());
  if (e1.prime() != e2.prime()) throw DomainError("prime mismatch");
  int n = std::min(e1.truncation(), e2.truncation());
  std::vector<NcSeries> images;
  for (int i = 0; i < e1.alphabet()->rank(); ++i)
    images.push_back(apply(e1, e2.image(i)).truncated(n));
  std::optional<mpz_class> base;
  int step = 1;
  if (e1.quasi_scalar_base() && e2.quasi_scalar_base() &&
      e1.quasi_scalar_step() == e2.quasi_scalar_step()) {
    base = *e1.quasi_scalar_base() * *e2.quasi_scalar_base();
    step = e1.quasi_scalar_step();
  }
  return Endomorphism::from_images(e1.alphabet(), e1.prime(), n,
                                   std::move(images),
                                   e1.label() + " . " + e2.label(), base, step);
}

PadicMatrix graded_matrix(const Endomorphism& e, int k, int n) {
  if (k < 0) throw DomainError("negative weight level");
  int maxdeg = max_degree_of_weight(*e.alphabet(), k);
  if (maxdeg >= n)
    throw DomainError("level " + std::to_string(k) +
                      " not contained below truncation " + std::to_string(n));
  std::vector<Monomial> basis = monomials_of_weight(*e.alphabet(), k);
  PadicMatrix m(static_cast<int>(basis.size()),
                static_cast<int>(basis.size()), e.prime());
  std::map<Monomial, int> index;
  for (size_t j = 0; j < basis.size(); ++j)
    index.emplace(basis[j], static_cast<int>(j));
  for (size_t j = 0; j < basis.size(); ++j) {
    NcSeries img = apply(
        e, NcSeries::monomial(e.alphabet(), e.prime(), n, basis[j]));
    if (!in_weight(img, k))
      throw DomainError("endomorphism does not preserve W^(-" +
                        std::to_string(k) + ")");
    for (const auto& [mon, c] : img.coefficients()) {
      if (!c.is_known()) continue;
      int w = mon.weight(*e.alphabet());
      if (w != k) continue;
      m.set(index.at(mon), static_cast<int>(j), c);
    }
  }
  return m;
}

int EndomorphismMatrix::index_of(const Monomial& m) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), m);
  if (it == basis.end() || *it != m)
    throw DomainError("monomial not in basis");
  return static_cast<int>(it - basis.begin());
}

EndomorphismMatrix full_matrix(const Endomorphism& e, int n) {
  if (n > e.truncation())
    throw DomainError("requested truncation exceeds the endomorphism's");
  std::vector<Monomial> basis = monomials_below_degree(*e.alphabet(), n);
  EndomorphismMatrix out(static_cast<int>(basis.size()), e.prime());
  out.basis = basis;
  for (const auto& m : basis)
    out.weights.push_back(m.weight(*e.alphabet()));

  // images by prefix recursion, in deglex order (prefixes come first)
  std::vector<NcSeries> u;
  for (int i = 0; i < e.alphabet()->rank(); ++i) {
    NcSeries s = e.image(i).truncated(n);
    s.set_coefficient(Monomial(), s.augmentation().add_int(-1));
    u.push_back(std::move(s));
  }
  std::map<Monomial, NcSeries> images;
  images.emplace(Monomial(), NcSeries::one(e.alphabet(), e.prime(), n));
  for (size_t j = 0; j < basis.size(); ++j) {
    const Monomial& m = basis[j];
    if (!m.empty()) {
      std::vector<std::uint8_t> w = m.word();
      std::uint8_t last = w.back();
      w.pop_back();
      images.emplace(m, images.at(Monomial(std::move(w))) * u[last]);
    }
    const NcSeries& img = images.at(m);
    for (const auto& [mon, c] : img.coefficients())
      out.matrix.set(out.index_of(mon), static_cast<int>(j), c);
  }
  return out;
}

}  // namespace lgr
