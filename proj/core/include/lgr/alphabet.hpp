#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lgr/errors.hpp"

namespace lgr {

/// Ordered generator alphabet of a free pro-l group. Each generator carries
/// a weight in {1, 2}: weight 1 models genus generators, weight 2 puncture
/// loops.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> names, std::vector<int> weights);

  /// Rank-many generators g1..gm, all of weight 2 (the punctured-line model).
  static std::shared_ptr<const Alphabet> punctured(int rank);
  /// Auto-named generators with the given weights.
  static std::shared_ptr<const Alphabet> with_weights(std::vector<int> weights);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  int weight(int i) const { return weights_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }

  bool all_weight(int w) const;
  int max_weight() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

void check_same_alphabet(const Alphabet& a, const Alphabet& b);

}  // namespace lgr
