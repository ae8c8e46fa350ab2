#include "nilcover/witt_hall.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilcover {

int mobius(long long d) {
  if (d < 1) throw std::invalid_argument("mobius: argument must be positive");
  int sign = 1;
  for (long long p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    d /= p;
    if (d % p == 0) return 0;
    sign = -sign;
  }
  if (d > 1) sign = -sign;
  return sign;
}

Int witt_rank(int m, int i) {
  if (m < 1 || i < 1)
    throw std::invalid_argument("witt_rank: rank and weight must be positive");
  Int sum = 0;
  for (int d = 1; d <= i; ++d) {
    if (i % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    Int term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(m),
                  static_cast<unsigned long>(i / d));
    sum += mu * term;
  }
  // Necklace count: the sum is always divisible by i.
  return sum / i;
}

Int basis_size(int m, int k) {
  Int total = 0;
  for (int i = 1; i <= k; ++i) total += witt_rank(m, i);
  return total;
}

HallBasis::HallBasis(int rank, int cls) : rank_(rank), cls_(cls) {
  if (rank < 1 || cls < 1)
    throw std::invalid_argument("HallBasis: rank and class must be positive");

  weight_start_.assign(static_cast<std::size_t>(cls) + 2, 0);
  weight_start_[1] = 0;
  for (int g = 0; g < rank; ++g) {
    BasicCommutator b;
    b.weight = 1;
    b.generator = g;
    elems_.push_back(b);
  }

  for (int w = 2; w <= cls; ++w) {
    weight_start_[w] = elems_.size();
    const std::size_t before = elems_.size();
    // [u,v] with u > v, weight(u) + weight(v) = w, and u = [u1,u2] => u2 <= v.
    // Looping u then v ascending yields the (left, right) lexicographic order.
    for (std::size_t u = 0; u < before; ++u) {
      const int wv = w - elems_[u].weight;
      if (wv < 1) continue;
      for (std::size_t v = 0; v < u; ++v) {
        if (elems_[v].weight != wv) continue;
        if (!elems_[u].is_generator() && elems_[u].right > v) continue;
        BasicCommutator b;
        b.weight = w;
        b.left = u;
        b.right = v;
        elems_.push_back(b);
      }
    }
  }
  weight_start_[cls + 1] = elems_.size();

  pair_index_.resize(elems_.size());
  pair_target_.resize(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i].is_generator()) continue;
    pair_index_[elems_[i].left].push_back(elems_[i].right);
    pair_target_[elems_[i].left].push_back(i);
  }
}

std::size_t HallBasis::weight_begin(int w) const {
  if (w <= 1) return 0;
  if (w > cls_) return elems_.size();
  return weight_start_[w];
}

std::size_t HallBasis::count_of_weight(int w) const {
  if (w < 1 || w > cls_) return 0;
  return weight_begin(w + 1) - weight_begin(w);
}

std::optional<std::size_t> HallBasis::find_pair(std::size_t left,
                                                std::size_t right) const {
  if (left >= elems_.size()) return std::nullopt;
  const auto& rights = pair_index_[left];
  auto it = std::lower_bound(rights.begin(), rights.end(), right);
  if (it == rights.end() || *it != right) return std::nullopt;
  return pair_target_[left][static_cast<std::size_t>(it - rights.begin())];
}

std::string HallBasis::render(std::size_t i) const {
  const auto& b = elems_.at(i);
  if (b.is_generator()) return "x" + std::to_string(b.generator + 1);
  return "[" + render(b.left) + "," + render(b.right) + "]";
}

HallBasis enumerate_basis(int m, int k) { return HallBasis(m, k); }

}  // namespace nilcover
