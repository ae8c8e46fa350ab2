#include "nilcover/pcgroup.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>

namespace nilcover {

namespace {

void require_context(const NilElement& a, const NilContextPtr& ctx) {
  if (a.context() != ctx)
    throw std::invalid_argument("element belongs to a different context");
}

bool commute_by_weight(const NilElement& a, const NilElement& b) {
  const int wa = leading_weight(a);
  const int wb = leading_weight(b);
  if (wa == kInfiniteWeight || wb == kInfiniteWeight) return true;
  return wa + wb > a.context()->cls();
}

// Builds the induced sequence of <gens> (or of its normal closure) by
// inserting elements one at a time:
//   - a free leading slot takes the element;
//   - an occupied slot divides the element's leading exponent, or both are
//     replaced by their gcd combination s^x g^y (leading coordinates add
//     when everything before them vanishes) and the two old elements are
//     re-queued;
//   - every newly placed element queues its commutators with the others
//     (and with the generators for normal closures).
// Termination: a slot's leading exponent only ever shrinks to a proper
// divisor, and every queued commutator has leading weight strictly above
// the leading weights of its two factors, so nothing is queued beyond
// class k. The final pass re-checks closure on the finished sequence and
// only repeats if it finds a new element.
class SequenceBuilder {
 public:
  SequenceBuilder(NilContextPtr ctx, bool normal)
      : ctx_(std::move(ctx)), normal_(normal), slots_(ctx_->size()) {}

  void push(const NilElement& g) {
    require_context(g, ctx_);
    enqueue(g);
  }

  SubgroupSequence finish() {
    for (;;) {
      drain();
      if (!queue_closure_failures()) break;
    }
    return current();
  }

 private:
  // Deepest leading index first: lower slots are then mostly settled when a
  // shallow element arrives, so its tail is reduced against them at once.
  void enqueue(NilElement g) {
    if (auto lead = g.leading_index()) queue_.emplace(*lead, std::move(g));
  }

  void drain() {
    while (!queue_.empty()) {
      auto it = std::prev(queue_.end());
      NilElement g = std::move(it->second);
      queue_.erase(it);
      insert(std::move(g));
    }
  }

  void insert(NilElement g) {
    while (auto lead = g.leading_index()) {
      const std::size_t l = *lead;
      if (!slots_[l]) {
        if (g[l] < 0) g = inverse(g);
        set_slot(l, std::move(g));
        return;
      }
      const NilElement s = *slots_[l];
      const Int& e = s[l];
      const Int& f = g[l];
      if (mpz_divisible_p(f.get_mpz_t(), e.get_mpz_t())) {
        g = power(s, -(f / e)) * g;
        continue;
      }
      Int d, x, y;
      gcdext(d, x, y, e, f);
      set_slot(l, power(s, x) * power(g, y));
      enqueue(s);
      enqueue(std::move(g));
      return;
    }
  }

  // Installs a slot and keeps the table in Hermite form: every coordinate at
  // an occupied lead u lies in [0, e_u) in all earlier slots.
  void set_slot(std::size_t l, NilElement g) {
    slots_[l] = reduce_tail(std::move(g), l + 1);
    for (std::size_t t = 0; t < l; ++t)
      if (slots_[t]) slots_[t] = reduce_tail(std::move(*slots_[t]), l);
    queue_commutators(l);
  }

  NilElement reduce_tail(NilElement g, std::size_t from) const {
    for (std::size_t u = from; u < slots_.size(); ++u) {
      if (!slots_[u] || g[u] == 0) continue;
      Int q, r;
      fdiv_qr(q, r, g[u], (*slots_[u])[u]);
      if (q != 0) g = g * power(*slots_[u], -q);
    }
    return g;
  }

  void queue_commutators(std::size_t l) {
    const NilElement& s = *slots_[l];
    for (std::size_t t = 0; t < slots_.size(); ++t) {
      if (t == l || !slots_[t]) continue;
      if (commute_by_weight(s, *slots_[t])) continue;
      enqueue(commutator(s, *slots_[t]));
    }
    if (!normal_) return;
    for (int j = 1; j <= ctx_->rank(); ++j) {
      const NilElement x = ctx_->generator(j);
      if (commute_by_weight(s, x)) continue;
      enqueue(commutator(s, x));
    }
  }

  bool queue_closure_failures() {
    const SubgroupSequence seq = current();
    const auto& elems = seq.elements();
    bool failed = false;
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = a + 1; b < elems.size(); ++b) {
        if (commute_by_weight(elems[a], elems[b])) continue;
        NilElement c = commutator(elems[b], elems[a]);
        if (!contains(seq, c)) {
          enqueue(std::move(c));
          failed = true;
        }
      }
      if (!normal_) continue;
      for (int j = 1; j <= ctx_->rank(); ++j) {
        const NilElement x = ctx_->generator(j);
        if (commute_by_weight(elems[a], x)) continue;
        NilElement c = commutator(elems[a], x);
        if (!contains(seq, c)) {
          enqueue(std::move(c));
          failed = true;
        }
      }
    }
    return failed;
  }

  SubgroupSequence current() const {
    std::vector<NilElement> elems;
    for (const auto& s : slots_)
      if (s) elems.push_back(*s);
    return SubgroupSequence(ctx_, std::move(elems));
  }

  NilContextPtr ctx_;
  bool normal_;
  std::vector<std::optional<NilElement>> slots_;
  std::multimap<std::size_t, NilElement> queue_;
};

}  // namespace

SubgroupSequence::SubgroupSequence(NilContextPtr ctx,
                                   std::vector<NilElement> elems)
    : ctx_(std::move(ctx)), elems_(std::move(elems)) {
  for (const auto& e : elems_) {
    require_context(e, ctx_);
    auto lead = e.leading_index();
    if (!lead) throw std::invalid_argument("induced sequence contains identity");
    if (!leads_.empty() && *lead <= leads_.back())
      throw std::invalid_argument("leading indices must strictly increase");
    if (e[*lead] <= 0)
      throw std::invalid_argument("leading exponents must be positive");
    leads_.push_back(*lead);
  }
}

std::optional<std::size_t> SubgroupSequence::position_of_lead(
    std::size_t index) const {
  auto it = std::lower_bound(leads_.begin(), leads_.end(), index);
  if (it == leads_.end() || *it != index) return std::nullopt;
  return static_cast<std::size_t>(it - leads_.begin());
}

SiftResult sift(const NilElement& a, const SubgroupSequence& s) {
  require_context(a, s.context());
  SiftResult out{a, std::vector<Int>(s.size())};
  for (std::size_t t = 0; t < s.size(); ++t) {
    const std::size_t l = s.leading_index(t);
    Int q, r;
    fdiv_qr(q, r, out.remainder[l], s.leading_exponent(t));
    if (q == 0) continue;
    out.remainder = power(s.elements()[t], -q) * out.remainder;
    out.exponents[t] = q;
  }
  return out;
}

bool contains(const SubgroupSequence& s, const NilElement& a) {
  return sift(a, s).remainder.is_identity();
}

bool contains(const SubgroupSequence& outer, const SubgroupSequence& inner) {
  for (const auto& e : inner.elements())
    if (!contains(outer, e)) return false;
  return true;
}

SubgroupSequence echelonize(const NilContextPtr& ctx,
                            std::span<const NilElement> elems) {
  SequenceBuilder b(ctx, false);
  for (const auto& e : elems) b.push(e);
  return b.finish();
}

SubgroupSequence normal_closure(std::span<const NilElement> gens,
                                const NilContextPtr& ctx) {
  SequenceBuilder b(ctx, true);
  for (const auto& g : gens) b.push(g);
  return b.finish();
}

SubgroupSequence join_normal(const SubgroupSequence& a,
                             const SubgroupSequence& b) {
  if (a.context() != b.context())
    throw std::invalid_argument("subgroups belong to different contexts");
  std::vector<NilElement> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return normal_closure(gens, a.context());
}

bool is_normal(const SubgroupSequence& s) {
  const auto& ctx = s.context();
  for (const auto& e : s.elements())
    for (int j = 1; j <= ctx->rank(); ++j)
      if (!contains(s, commutator(e, ctx->generator(j)))) return false;
  return true;
}

SubgroupSequence gamma_subgroup(const NilContextPtr& ctx, int w) {
  if (w < 1 || w > ctx->cls() + 1)
    throw std::invalid_argument("gamma_subgroup: weight out of range 1..k+1");
  std::vector<NilElement> elems;
  for (std::size_t i = ctx->basis().weight_begin(w); i < ctx->size(); ++i)
    elems.push_back(ctx->basis_element(i));
  return SubgroupSequence(ctx, std::move(elems));
}

SubgroupSequence intersect_with_gamma(const SubgroupSequence& s, int w) {
  std::vector<NilElement> elems;
  for (const auto& e : s.elements())
    if (leading_weight(e) >= w) elems.push_back(e);
  return SubgroupSequence(s.context(), std::move(elems));
}

SubgroupSequence commutator_subgroup_with(const SubgroupSequence& s,
                                          int times) {
  if (times < 1)
    throw std::invalid_argument("commutator_subgroup_with: times must be positive");
  if (!is_normal(s))
    throw std::invalid_argument("commutator_subgroup_with: subgroup is not normal");
  const auto& ctx = s.context();
  SubgroupSequence cur = s;
  // [N, G] is the normal closure of [n, x_j] over generators n of N and x_j
  // of G; each round is closed again before the next.
  for (int round = 0; round < times && !cur.empty(); ++round) {
    std::vector<NilElement> gens;
    for (const auto& e : cur.elements())
      for (int j = 1; j <= ctx->rank(); ++j) {
        NilElement c = commutator(e, ctx->generator(j));
        if (!c.is_identity()) gens.push_back(std::move(c));
      }
    cur = normal_closure(gens, ctx);
  }
  return cur;
}

PcQuotient::PcQuotient(NilContextPtr ctx, SubgroupSequence divisor)
    : ctx_(std::move(ctx)), divisor_(std::move(divisor)) {
  if (divisor_.context() != ctx_)
    throw std::invalid_argument("divisor belongs to a different context");
  if (!is_normal(divisor_))
    throw std::invalid_argument("quotient: divisor is not normal");
}

std::optional<Int> PcQuotient::relative_order(std::size_t i) const {
  if (auto t = divisor_.position_of_lead(i)) return divisor_.leading_exponent(*t);
  return std::nullopt;
}

NilElement PcQuotient::coset_form(const NilElement& a) const {
  return sift(a, divisor_).remainder;
}

std::optional<Int> PcQuotient::order() const {
  Int total = 1;
  for (std::size_t i = 0; i < ctx_->size(); ++i) {
    auto r = relative_order(i);
    if (!r) return std::nullopt;
    total *= *r;
  }
  return total;
}

PcQuotient quotient(const NilContextPtr& ctx, const SubgroupSequence& n) {
  return PcQuotient(ctx, n);
}

NilElement coset_form(const PcQuotient& q, const NilElement& a) {
  return q.coset_form(a);
}

std::optional<Int> group_order(const PcQuotient& q) { return q.order(); }

AbelianInvariants subquotient_invariants(const SubgroupSequence& w,
                                         const SubgroupSequence& v) {
  if (w.context() != v.context())
    throw std::invalid_argument("subgroups belong to different contexts");
  if (!contains(w, v))
    throw std::invalid_argument("subquotient_invariants: V is not inside W");
  const auto& we = w.elements();
  for (std::size_t a = 0; a < we.size(); ++a)
    for (std::size_t b = a + 1; b < we.size(); ++b)
      if (!commute_by_weight(we[a], we[b]) &&
          !contains(v, commutator(we[b], we[a])))
        throw std::invalid_argument(
            "subquotient_invariants: W/V is not abelian");

  // Rows: V's generators in W's exponent coordinates.
  IntMatrix rel(v.size(), w.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    const SiftResult sr = sift(v.elements()[r], w);
    for (std::size_t c = 0; c < w.size(); ++c) rel(r, c) = sr.exponents[c];
  }
  return smith_normal_form(rel).cokernel;
}

}  // namespace nilcover
