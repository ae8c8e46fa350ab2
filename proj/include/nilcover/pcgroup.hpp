#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nilcover/collect.hpp"
#include "nilcover/intlinalg.hpp"

namespace nilcover {

/// Induced generating sequence of a subgroup of a free nilpotent group.
///
/// Leading Hall indices strictly increase and leading exponents are
/// positive, so every subgroup element is uniquely s_1^k_1 ... s_r^k_r.
/// Sequences built by this module are also reduced: the coordinate of s_t at
/// the leading index of a later s_u lies in [0, e_u). A subgroup has exactly
/// one reduced sequence, which makes equality of subgroups plain equality.
class SubgroupSequence {
 public:
  explicit SubgroupSequence(NilContextPtr ctx) : ctx_(std::move(ctx)) {}
  /// Takes elements that already form an induced sequence.
  SubgroupSequence(NilContextPtr ctx, std::vector<NilElement> elems);

  const NilContextPtr& context() const { return ctx_; }
  const std::vector<NilElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  std::size_t leading_index(std::size_t t) const { return leads_[t]; }
  const Int& leading_exponent(std::size_t t) const {
    return elems_[t][leads_[t]];
  }
  /// Position of the element with the given leading index, if any.
  std::optional<std::size_t> position_of_lead(std::size_t index) const;

  friend bool operator==(const SubgroupSequence& a, const SubgroupSequence& b) {
    return a.ctx_ == b.ctx_ && a.elems_ == b.elems_;
  }

 private:
  NilContextPtr ctx_;
  std::vector<NilElement> elems_;
  std::vector<std::size_t> leads_;
};

struct SiftResult {
  NilElement remainder;
  /// a = s_1^q_1 ... s_r^q_r * remainder
  std::vector<Int> exponents;
};

/// Division with remainder through the sequence, left to right. The
/// remainder is the identity iff a lies in the subgroup; for a normal
/// subgroup it is the canonical representative of the coset.
SiftResult sift(const NilElement& a, const SubgroupSequence& s);

bool contains(const SubgroupSequence& s, const NilElement& a);
bool contains(const SubgroupSequence& outer, const SubgroupSequence& inner);

/// Induced sequence of the subgroup generated by `elems`.
SubgroupSequence echelonize(const NilContextPtr& ctx,
                            std::span<const NilElement> elems);

/// Induced sequence of the normal closure of `gens`.
SubgroupSequence normal_closure(std::span<const NilElement> gens,
                                const NilContextPtr& ctx);

/// Product of two normal subgroups.
SubgroupSequence join_normal(const SubgroupSequence& a,
                             const SubgroupSequence& b);

/// Every conjugate of a member by a generator stays inside.
bool is_normal(const SubgroupSequence& s);

/// gamma_w of the context: basis elements of weight >= w; 1 <= w <= k+1.
SubgroupSequence gamma_subgroup(const NilContextPtr& ctx, int w);

/// <S> intersected with gamma_w, read off the reduced sequence.
SubgroupSequence intersect_with_gamma(const SubgroupSequence& s, int w);

/// [<S>, G, ..., G] with `times` commutations; S must be normal.
SubgroupSequence commutator_subgroup_with(const SubgroupSequence& s,
                                          int times);

/// G / N for a normal subgroup N, in coset normal forms.
class PcQuotient {
 public:
  PcQuotient(NilContextPtr ctx, SubgroupSequence divisor);

  const NilContextPtr& context() const { return ctx_; }
  const SubgroupSequence& divisor() const { return divisor_; }

  /// Relative order at Hall index i; nullopt means infinite.
  std::optional<Int> relative_order(std::size_t i) const;
  /// Canonical coset representative.
  NilElement coset_form(const NilElement& a) const;
  /// nullopt means infinite.
  std::optional<Int> order() const;

 private:
  NilContextPtr ctx_;
  SubgroupSequence divisor_;
};

PcQuotient quotient(const NilContextPtr& ctx, const SubgroupSequence& n);
NilElement coset_form(const PcQuotient& q, const NilElement& a);
std::optional<Int> group_order(const PcQuotient& q);

/// Invariants of W/V for V <= W with [W, W] <= V.
AbelianInvariants subquotient_invariants(const SubgroupSequence& w,
                                         const SubgroupSequence& v);

}  // namespace nilcover
