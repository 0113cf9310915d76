#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lgr/alphabet.hpp"

namespace lgr {

/// A word in the alphabet indices: one noncommutative monomial T_{i1}...T_{id}.
/// Ordered by degree first, then lexicographically — the deterministic basis
/// order used everywhere (coefficient maps, graded bases, seed enumeration).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint8_t> word) : word_(std::move(word)) {}
  static Monomial generator(int i);

  int degree() const { return static_cast<int>(word_.size()); }
  bool empty() const { return word_.empty(); }
  /// Sum of generator weights along the word (the W-filtration level).
  int weight(const Alphabet& alphabet) const;

  Monomial concat(const Monomial& other) const;
  /// Letters sorted ascending: the commutative (abelianized) normal form.
  Monomial sorted() const;

  const std::vector<std::uint8_t>& word() const { return word_; }

  std::strong_ordering operator<=>(const Monomial& other) const {
    if (auto c = word_.size() <=> other.word_.size(); c != 0) return c;
    return word_ <=> other.word_;
  }
  bool operator==(const Monomial&) const = default;

  std::string to_string(const Alphabet& alphabet) const;

 private:
  std::vector<std::uint8_t> word_;
};

/// All monomials of degree < n, in deglex order.
std::vector<Monomial> monomials_below_degree(const Alphabet& alphabet, int n);

/// All monomials of weight exactly k (any degree — bounded by k since
/// weights are >= 1), in deglex order.
std::vector<Monomial> monomials_of_weight(const Alphabet& alphabet, int k);

/// Largest degree a weight-k monomial can have over this alphabet
/// (k if a weight-1 generator exists, else k/2; -1 when the level is empty).
int max_degree_of_weight(const Alphabet& alphabet, int k);

}  // namespace lgr
