#include "lgr/monomial.hpp"

#include <algorithm>

namespace lgr {

Alphabet::Alphabet(std::vector<std::string> names, std::vector<int> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.empty()) throw DomainError("alphabet must be nonempty");
  if (names_.size() != weights_.size())
    throw DomainError("alphabet names/weights size mismatch");
  if (names_.size() > 255) throw DomainError("alphabet rank exceeds 255");
  for (int w : weights_)
    if (w != 1 && w != 2) throw DomainError("generator weights must be 1 or 2");
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("alphabet labels must be distinct");
}

std::shared_ptr<const Alphabet> Alphabet::punctured(int rank) {
  return with_weights(std::vector<int>(static_cast<size_t>(rank), 2));
}

std::shared_ptr<const Alphabet> Alphabet::with_weights(
    std::vector<int> weights) {
  if (weights.empty()) throw DomainError("alphabet must be nonempty");
  std::vector<std::string> names;
  names.reserve(weights.size());
  for (size_t i = 0; i < weights.size(); ++i)
    names.push_back("g" + std::to_string(i + 1));
  return std::make_shared<Alphabet>(std::move(names), std::move(weights));
}

bool Alphabet::all_weight(int w) const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [w](int x) { return x == w; });
}

int Alphabet::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

void check_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (a != b) throw DomainError("alphabet mismatch");
}

Monomial Monomial::generator(int i) {
  if (i < 0 || i > 255) throw DomainError("generator index out of range");
  return Monomial({static_cast<std::uint8_t>(i)});
}

int Monomial::weight(const Alphabet& alphabet) const {
  int w = 0;
  for (auto i : word_) {
    if (i >= alphabet.rank()) throw DomainError("monomial index out of alphabet");
    w += alphabet.weight(i);
  }
  return w;
}

Monomial Monomial::concat(const Monomial& other) const {
  std::vector<std::uint8_t> w = word_;
  w.insert(w.end(), other.word_.begin(), other.word_.end());
  return Monomial(std::move(w));
}

Monomial Monomial::sorted() const {
  std::vector<std::uint8_t> w = word_;
  std::sort(w.begin(), w.end());
  return Monomial(std::move(w));
}

std::string Monomial::to_string(const Alphabet& alphabet) const {
  if (word_.empty()) return "1";
  std::string s;
  for (size_t j = 0; j < word_.size(); ++j) {
    if (j) s += "*";
    s += "T(" + alphabet.name(word_[j]) + ")";
  }
  return s;
}

std::vector<Monomial> monomials_below_degree(const Alphabet& alphabet, int n) {
  std::vector<Monomial> out;
  std::vector<Monomial> layer{Monomial()};
  for (int d = 0; d < n; ++d) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (d + 1 >= n) break;
    std::vector<Monomial> next;
    next.reserve(layer.size() * static_cast<size_t>(alphabet.rank()));
    for (const auto& m : layer)
      for (int i = 0; i < alphabet.rank(); ++i)
        next.push_back(m.concat(Monomial::generator(i)));
    layer = std::move(next);
  }
  return out;
}

std::vector<Monomial> monomials_of_weight(const Alphabet& alphabet, int k) {
  std::vector<Monomial> out;
  // weight >= degree, so words of weight k have degree <= k
  for (const auto& m : monomials_below_degree(alphabet, k + 1))
    if (m.weight(alphabet) == k) out.push_back(m);
  return out;
}

int max_degree_of_weight(const Alphabet& alphabet, int k) {
  if (k == 0) return 0;
  bool has1 = false, has2 = false;
  for (int i = 0; i < alphabet.rank(); ++i) {
    if (alphabet.weight(i) == 1) has1 = true;
    if (alphabet.weight(i) == 2) has2 = true;
  }
  if (has1) return k;
  if (!has2) return -1;
  return k % 2 == 0 ? k / 2 : -1;
}

}  // namespace lgr
