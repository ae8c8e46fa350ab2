#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilcover/bigint.hpp"
#include "nilcover/witt_hall.hpp"

namespace nilcover {

inline constexpr int kMaxClass = 8;
inline constexpr int kMaxRank = 6;
inline constexpr std::size_t kMaxBasisSize = 500;

/// Leading weight of the identity.
inline constexpr int kInfiniteWeight = std::numeric_limits<int>::max();

/// Raised when a request exceeds the rank/class/basis-size limits.
class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One syllable x_g^e of a word; g is 1-based.
struct Letter {
  int generator;
  Int exponent;
};
using Word = std::vector<Letter>;

class NilContext;
class NilElement;
using NilContextPtr = std::shared_ptr<const NilContext>;

using Exponents = std::vector<Int>;

/// The free nilpotent group F/gamma_{k+1}(F) of rank m, with elements in
/// collected form b_1^a_1 ... b_N^a_N over the Hall basis.
///
/// Multiplication is collection from the left. Every product reduces to
/// conjugating a collected tail by a single basis letter, which needs the
/// commutators [b_j, b_i] (j > i). Those are expanded lazily:
///   - weight(b_j) + weight(b_i) > k: trivial;
///   - [b_j, b_i] basic: the basis letter itself;
///   - otherwise b_j = [u, v] with v > b_i, and
///       [b_j, b_i] = b_j^-1 [u^b_i, v^b_i],  u^b_i = u [u, b_i].
///     The right hand side is collected from letters of index > i only, which
///     needs [b_q, b_p] for p > i, or p = i and q in {u, v} (both < j). The
///     recursion is therefore well founded on (-i, j).
/// Conjugating b_q^g by b_p^e gives coordinates that are integer valued
/// polynomials in (g, e), of degree at most k/w(b_q) in g and k/w(b_p) in e.
/// They are interpolated once per pair from a small grid of direct
/// conjugations, so large exponents cost one evaluation. Building the table
/// for (q, p) only collects letters of index > p.
/// Expansions are memoized; the cache is guarded and never changes results.
class NilContext : public std::enable_shared_from_this<NilContext> {
 public:
  static NilContextPtr create(int rank, int cls);

  NilContext(const NilContext&) = delete;
  NilContext& operator=(const NilContext&) = delete;

  const HallBasis& basis() const { return basis_; }
  int rank() const { return basis_.rank(); }
  int cls() const { return basis_.cls(); }
  std::size_t size() const { return basis_.size(); }

  NilElement identity() const;
  /// x_g, g is 1-based.
  NilElement generator(int g) const;
  /// b_i, i is a 0-based basis index.
  NilElement basis_element(std::size_t i) const;
  NilElement element(Exponents exps) const;

  /// Collected form of [b_j, b_i] for j > i.
  NilElement basis_commutator(std::size_t j, std::size_t i) const;

  // Raw collection on exponent vectors of length size().
  void multiply_letter(Exponents& a, std::size_t p, const Int& e) const;
  Exponents multiply(const Exponents& a, const Exponents& b) const;
  Exponents inverse(const Exponents& a) const;
  Exponents power(const Exponents& a, Int n) const;
  Exponents commutator(const Exponents& a, const Exponents& b) const;

 private:
  using Sparse = std::vector<std::pair<std::size_t, Int>>;

  NilContext(int rank, int cls);

  // Coordinates of b_p^-e b_q^g b_p^e as sum over (a, t) of
  // coeffs[a * (deg_e + 1) + t] * binom(g, a) * binom(e, t).
  struct ConjugationPolynomial {
    int deg_g = 0;
    int deg_e = 0;
    std::vector<std::pair<std::size_t, std::vector<Int>>> coords;
  };

  const Sparse& comm(std::size_t j, std::size_t i) const;
  const ConjugationPolynomial& conj_poly(std::size_t q, std::size_t p) const;
  Sparse compute_comm(std::size_t j, std::size_t i) const;
  ConjugationPolynomial compute_conj_poly(std::size_t q, std::size_t p) const;

  // Image of b_q under conjugation by b_p, q > p.
  Exponents letter_image(std::size_t q, std::size_t p) const;
  bool letter_commutes(std::size_t q, std::size_t p) const;
  // g^(b_p^e) for g supported on letters > p.
  Exponents conjugate(const Exponents& g, std::size_t p, const Int& e) const;
  // One conjugation by b_p, letter by letter.
  Exponents apply_images(const Exponents& g, std::size_t p,
                         const std::vector<Exponents>& images) const;

  Exponents dense(const Sparse& s) const;
  static Sparse sparse(const Exponents& a);

  HallBasis basis_;
  mutable std::mutex cache_mutex_;
  mutable std::vector<std::optional<Sparse>> comm_cache_;
  mutable std::vector<std::optional<ConjugationPolynomial>> conj_cache_;
};

/// Element of a free nilpotent group in Hall normal form. Two elements are
/// equal iff their exponent sequences are equal.
class NilElement {
 public:
  NilElement(NilContextPtr ctx, Exponents exps);

  const NilContextPtr& context() const { return ctx_; }
  const Exponents& exponents() const { return exps_; }
  const Int& operator[](std::size_t i) const { return exps_[i]; }
  std::size_t size() const { return exps_.size(); }

  bool is_identity() const;
  std::optional<std::size_t> leading_index() const;

  friend bool operator==(const NilElement& a, const NilElement& b) {
    return a.ctx_ == b.ctx_ && a.exps_ == b.exps_;
  }

 private:
  NilContextPtr ctx_;
  Exponents exps_;
};

NilElement normal_form(const Word& w, const NilContextPtr& ctx);
NilElement multiply(const NilElement& a, const NilElement& b);
NilElement inverse(const NilElement& a);
NilElement power(const NilElement& a, const Int& n);
/// a^-1 b^-1 a b.
NilElement commutator(const NilElement& a, const NilElement& b);
/// Left-normed [a, y1, ..., yt].
NilElement iterated_commutator(const NilElement& a,
                               std::span<const NilElement> ys);
/// Minimal weight carrying a nonzero exponent, kInfiniteWeight for identity.
int leading_weight(const NilElement& a);

inline NilElement operator*(const NilElement& a, const NilElement& b) {
  return multiply(a, b);
}

/// b_i written as a word in the generators (commutators fully expanded).
Word expand_basis_element(const HallBasis& basis, std::size_t i);
/// The collected form written out as a word in the generators.
Word render(const NilElement& a);

/// Image under F/gamma_{k+1} -> F/gamma_{l+1}, l <= k: drops the
/// coordinates of weight > l.
NilElement truncate(const NilElement& a, const NilContextPtr& target);

}  // namespace nilcover
