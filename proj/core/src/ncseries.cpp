#include "lgr/ncseries.hpp"

#include <algorithm>
#include <sstream>

namespace lgr {

namespace {

void check_compatible(const NcSeries& a, const NcSeries& b) {
  check_same_alphabet(*a.alphabet(), *b.alphabet());
  if (a.prime() != b.prime()) throw DomainError("prime mismatch");
}

bool drop_entry(const PadicScalar& c) {
  return c.is_zero() && c.precision() == kInfinitePrecision;
}

}  // namespace

GroupWord::GroupWord(AlphabetPtr alphabet, long prime)
    : alphabet_(std::move(alphabet)), prime_(prime) {
  if (!alphabet_) throw DomainError("null alphabet");
}

GroupWord& GroupWord::append(int gen, PadicScalar exponent) {
  if (gen < 0 || gen >= alphabet_->rank())
    throw DomainError("generator index out of range");
  if (exponent.prime() != prime_) throw DomainError("prime mismatch");
  if (exponent.is_known() && exponent.valuation() < 0)
    throw DomainError("group exponents must be l-adic integers");
  letters_.push_back({gen, std::move(exponent), std::nullopt});
  return *this;
}

GroupWord& GroupWord::append(int gen, const mpz_class& exponent) {
  append(gen, PadicScalar::from_integer(exponent, prime_));
  letters_.back().exact = exponent;
  return *this;
}

GroupWord GroupWord::generator(AlphabetPtr alphabet, long prime, int gen,
                               const mpz_class& exponent) {
  GroupWord w(std::move(alphabet), prime);
  w.append(gen, exponent);
  return w;
}

GroupWord GroupWord::commutator(const GroupWord& a, const GroupWord& b) {
  return a.concat(b).concat(a.inverse()).concat(b.inverse());
}

GroupWord GroupWord::inverse() const {
  GroupWord w(alphabet_, prime_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    Letter l = *it;
    l.exponent = -l.exponent;
    if (l.exact) l.exact = -*l.exact;
    w.letters_.push_back(std::move(l));
  }
  return w;
}

GroupWord GroupWord::concat(const GroupWord& other) const {
  check_same_alphabet(*alphabet_, *other.alphabet_);
  if (prime_ != other.prime_) throw DomainError("prime mismatch");
  GroupWord w = *this;
  w.letters_.insert(w.letters_.end(), other.letters_.begin(),
                    other.letters_.end());
  return w;
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (size_t j = 0; j < letters_.size(); ++j) {
    if (j) s += ".";
    s += alphabet_->name(letters_[j].gen);
    if (letters_[j].exact) {
      if (*letters_[j].exact != 1) s += "^" + letters_[j].exact->get_str();
    } else {
      s += "^(" + letters_[j].exponent.to_string() + ")";
    }
  }
  return s;
}

NcSeries::NcSeries(AlphabetPtr alphabet, long prime, int truncation)
    : alphabet_(std::move(alphabet)), prime_(prime), truncation_(truncation) {
  if (!alphabet_) throw DomainError("null alphabet");
  if (truncation_ < 1) throw DomainError("truncation must be >= 1");
}

NcSeries NcSeries::one(AlphabetPtr alphabet, long prime, int truncation,
                       int precision) {
  NcSeries s(std::move(alphabet), prime, truncation);
  s.set_coefficient(Monomial(), PadicScalar::one(prime, precision));
  return s;
}

NcSeries NcSeries::monomial(AlphabetPtr alphabet, long prime, int truncation,
                            const Monomial& m, int precision) {
  NcSeries s(std::move(alphabet), prime, truncation);
  s.set_coefficient(m, PadicScalar::one(prime, precision));
  return s;
}

PadicScalar NcSeries::coefficient(const Monomial& m) const {
  auto it = coeffs_.find(m);
  if (it == coeffs_.end()) return PadicScalar::zero(prime_);
  return it->second;
}

void NcSeries::set_coefficient(const Monomial& m, PadicScalar c) {
  if (m.degree() >= truncation_)
    throw DomainError("monomial degree exceeds truncation");
  if (c.prime() != prime_) throw DomainError("prime mismatch");
  if (drop_entry(c))
    coeffs_.erase(m);
  else
    coeffs_[m] = std::move(c);
}

void NcSeries::add_to_coefficient(const Monomial& m, const PadicScalar& c) {
  set_coefficient(m, coefficient(m) + c);
}

PadicScalar NcSeries::augmentation() const { return coefficient(Monomial()); }

NcSeries NcSeries::operator-() const {
  NcSeries r(alphabet_, prime_, truncation_);
  for (const auto& [m, c] : coeffs_) r.coeffs_.emplace(m, -c);
  return r;
}

NcSeries operator+(const NcSeries& a, const NcSeries& b) {
  check_compatible(a, b);
  NcSeries r(a.alphabet_, a.prime_,
             std::min(a.truncation_, b.truncation_));
  for (const auto& [m, c] : a.coeffs_)
    if (m.degree() < r.truncation_) r.set_coefficient(m, c);
  for (const auto& [m, c] : b.coeffs_)
    if (m.degree() < r.truncation_) r.add_to_coefficient(m, c);
  return r;
}

NcSeries operator-(const NcSeries& a, const NcSeries& b) { return a + (-b); }

NcSeries operator*(const NcSeries& a, const NcSeries& b) {
  check_compatible(a, b);
  NcSeries r(a.alphabet_, a.prime_,
             std::min(a.truncation_, b.truncation_));
  for (const auto& [ma, ca] : a.coeffs_) {
    if (ma.degree() >= r.truncation_) continue;
    for (const auto& [mb, cb] : b.coeffs_) {
      if (ma.degree() + mb.degree() >= r.truncation_) continue;
      r.add_to_coefficient(ma.concat(mb), ca * cb);
    }
  }
  return r;
}

NcSeries NcSeries::scalar_mul(const PadicScalar& c) const {
  NcSeries r(alphabet_, prime_, truncation_);
  for (const auto& [m, x] : coeffs_) r.set_coefficient(m, x * c);
  return r;
}

NcSeries NcSeries::scalar_mul_int(const mpz_class& n) const {
  NcSeries r(alphabet_, prime_, truncation_);
  for (const auto& [m, x] : coeffs_) r.set_coefficient(m, x.mul_int(n));
  return r;
}

NcSeries NcSeries::scalar_div_int(const mpz_class& n) const {
  NcSeries r(alphabet_, prime_, truncation_);
  for (const auto& [m, x] : coeffs_) r.set_coefficient(m, x.div_int(n));
  return r;
}

NcSeries NcSeries::truncated(int n) const {
  if (n > truncation_) throw DomainError("cannot raise a truncation");
  NcSeries r(alphabet_, prime_, n);
  for (const auto& [m, c] : coeffs_)
    if (m.degree() < n) r.coeffs_.emplace(m, c);
  return r;
}

bool NcSeries::integral() const {
  for (const auto& [m, c] : coeffs_)
    if (c.is_known() && c.valuation() < 0) return false;
  return true;
}

bool NcSeries::equals_mod(const NcSeries& other, int k) const {
  check_compatible(*this, other);
  NcSeries d = *this - other;
  for (const auto& [m, c] : d.coeffs_) {
    if (!c.equals_mod(PadicScalar::zero(prime_), k)) return false;
  }
  return true;
}

std::string NcSeries::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (!m.empty()) os << "*" << m.to_string(*alphabet_);
  }
  os << " mod I^" << truncation_;
  return os.str();
}

bool operator==(const NcSeries& a, const NcSeries& b) {
  return *a.alphabet_ == *b.alphabet_ && a.prime_ == b.prime_ &&
         a.truncation_ == b.truncation_ && a.coeffs_ == b.coeffs_;
}

namespace {

/// (1 + T_i)^e truncated: sum_k binom(e, k) T_i^k.
NcSeries generator_power_series(const AlphabetPtr& alphabet, long prime,
                                int truncation, int gen,
                                const GroupWord::Letter& letter,
                                int precision) {
  NcSeries s(alphabet, prime, truncation);
  Monomial t;
  for (int k = 0; k < truncation; ++k) {
    PadicScalar c = letter.exact
                        ? [&] {
                            mpz_class b;
                            mpz_bin_ui(b.get_mpz_t(), letter.exact->get_mpz_t(),
                                       static_cast<unsigned long>(k));
                            return PadicScalar::from_integer(b, prime,
                                                             precision);
                          }()
                        : binomial(letter.exponent,
                                   static_cast<unsigned long>(k));
    s.set_coefficient(t, c);
    t = t.concat(Monomial::generator(gen));
  }
  return s;
}

}  // namespace

NcSeries magnus_embed(const GroupWord& w, int truncation, int precision) {
  NcSeries acc =
      NcSeries::one(w.alphabet(), w.prime(), truncation, precision);
  for (const auto& letter : w.letters()) {
    acc = acc * generator_power_series(w.alphabet(), w.prime(), truncation,
                                       letter.gen, letter, precision);
  }
  return acc;
}

NcSeries log_grouplike(const NcSeries& g) {
  PadicScalar aug1 = g.augmentation().add_int(-1);
  if (aug1.is_known())
    throw DomainError("log requires a group-like series (augmentation 1)");
  NcSeries x = g;
  x.set_coefficient(Monomial(), aug1);
  NcSeries acc = x;
  NcSeries power = x;
  for (int j = 2; j < g.truncation(); ++j) {
    power = power * x;
    NcSeries term = power.scalar_div_int(j);
    acc = (j % 2 == 0) ? acc - term : acc + term;
  }
  return acc;
}

NcSeries exp_augzero(const NcSeries& x) {
  if (x.augmentation().is_known())
    throw DomainError("exp requires augmentation 0");
  NcSeries acc = NcSeries::one(x.alphabet(), x.prime(), x.truncation());
  NcSeries power = x;
  mpz_class factorial(1);
  for (int j = 1; j < x.truncation(); ++j) {
    factorial *= j;
    acc = acc + power.scalar_div_int(factorial);
    if (j + 1 < x.truncation()) power = power * x;
  }
  return acc;
}

NcSeries abelianize(const NcSeries& a) {
  NcSeries r(a.alphabet(), a.prime(), a.truncation());
  for (const auto& [m, c] : a.coefficients())
    r.add_to_coefficient(m.sorted(), c);
  return r;
}

}  // namespace lgr
