#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilcover/bigint.hpp"

namespace nilcover {

/// Möbius function, d >= 1.
int mobius(long long d);

/// Number of basic commutators of weight `i` on `m` letters:
/// (1/i) * sum_{d | i} mobius(d) * m^(i/d).
Int witt_rank(int m, int i);

/// A basic commutator, either a generator (weight 1) or a bracket of two
/// earlier basis elements addressed by basis index.
struct BasicCommutator {
  int weight = 1;
  int generator = -1;  // 0-based generator number, -1 for brackets
  std::size_t left = 0;
  std::size_t right = 0;

  bool is_generator() const { return generator >= 0; }
};

/// Hall basis of basic commutators of weight <= cls on `rank` generators.
///
/// Elements are ordered by weight; inside a weight, generators by number and
/// brackets [u,v] lexicographically by (index of u, index of v). The order is
/// stable under increasing the class, so the basis for class k is a prefix of
/// the basis for class k+1.
class HallBasis {
 public:
  HallBasis(int rank, int cls);

  int rank() const { return rank_; }
  int cls() const { return cls_; }
  std::size_t size() const { return elems_.size(); }

  const BasicCommutator& operator[](std::size_t i) const { return elems_[i]; }
  int weight(std::size_t i) const { return elems_[i].weight; }

  /// First index of weight >= w (size() when there is none).
  std::size_t weight_begin(int w) const;
  /// Number of elements of exactly weight w.
  std::size_t count_of_weight(int w) const;

  /// Index of the basic commutator [left, right], if it is basic and its
  /// weight does not exceed the class.
  std::optional<std::size_t> find_pair(std::size_t left,
                                       std::size_t right) const;

  /// Bracketed generator notation, e.g. "[[x2,x1],x1]".
  std::string render(std::size_t i) const;

 private:
  int rank_;
  int cls_;
  std::vector<BasicCommutator> elems_;
  std::vector<std::size_t> weight_start_;  // weight_start_[w] for w = 1..cls+1
  std::vector<std::vector<std::size_t>> pair_index_;  // [left] -> sorted rights
  std::vector<std::vector<std::size_t>> pair_target_;
};

/// Total number of basis elements of weight <= k, computed from witt_rank.
Int basis_size(int m, int k);

HallBasis enumerate_basis(int m, int k);

}  // namespace nilcover
