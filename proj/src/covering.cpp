#include "nilcover/covering.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilcover {

namespace {

void validate(const CyclicFamily& fam, int n, int c, bool need_c) {
  if (fam.orders.empty())
    throw std::invalid_argument("the family needs at least one cyclic factor");
  for (const auto& e : fam.orders)
    if (e < 0) throw std::invalid_argument("cyclic orders must be nonnegative");
  if (fam.rank() > kMaxRank)
    throw BoundsError("number of factors " + std::to_string(fam.rank()) +
                      " exceeds the bound " + std::to_string(kMaxRank));
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (need_c && c < 1) throw std::invalid_argument("c must be positive");
  const int cls = n + (need_c ? c : 0);
  if (cls > kMaxClass)
    throw BoundsError((need_c ? "n+c = " : "n = ") + std::to_string(cls) +
                      " exceeds the class bound " + std::to_string(kMaxClass));
}

std::vector<NilElement> concat(std::vector<NilElement> a,
                               const std::vector<NilElement>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Subgroup generated by N and the basis elements of weight >= w.
SubgroupSequence with_gamma(const SubgroupSequence& n, int w) {
  return join_normal(n, gamma_subgroup(n.context(), w));
}

struct CoverPieces {
  NilContextPtr ctx;
  SubgroupSequence relators;     // N: normal closure of the x_i^e_i
  SubgroupSequence kernel;       // P~ = N gamma_{n+1}
  bool cartesian_identity = false;
  bool commutator_recurrence = false;
};

CoverPieces build_cover(const CyclicFamily& fam, int n, int c) {
  validate(fam, n, c, true);
  if (n < c)
    throw std::invalid_argument(
        "covering_group needs n >= c; use decide for n < c");
  auto ctx = NilContext::create(fam.rank(), n + c);
  const auto rel = relator_elements(fam, ctx);
  CoverPieces p{ctx, normal_closure(rel, ctx), SubgroupSequence(ctx)};
  p.kernel = with_gamma(p.relators, n + 1);

  // The cartesian subgroup of the free product of cyclic groups is normally
  // generated by the [x_i, x_j]; it should coincide with gamma_2 (mod N).
  std::vector<NilElement> cart_gens;
  for (int i = 1; i <= fam.rank(); ++i)
    for (int j = i + 1; j <= fam.rank(); ++j)
      cart_gens.push_back(commutator(ctx->generator(i), ctx->generator(j)));
  const SubgroupSequence cartesian = normal_closure(concat(rel, cart_gens), ctx);
  p.cartesian_identity = cartesian == with_gamma(p.relators, 2) &&
                         contains(cartesian, p.kernel);

  // [J_n, _r L] = gamma_{n+1+r}(L) for r = 1..c, all modulo N.
  p.commutator_recurrence = true;
  for (int r = 1; r <= c && p.commutator_recurrence; ++r) {
    const SubgroupSequence lhs =
        join_normal(commutator_subgroup_with(p.kernel, r), p.relators);
    const SubgroupSequence rhs =
        r == c ? p.relators : with_gamma(p.relators, n + 1 + r);
    p.commutator_recurrence = lhs == rhs;
  }
  return p;
}

// S/P against G_n: same relative orders below weight n+1, nothing above,
// and the same power and conjugate relations in coset normal form.
bool same_presentation(const PcQuotient& top, const PcQuotient& gn) {
  const auto& big = top.context();
  const auto& small = gn.context();
  for (std::size_t i = 0; i < big->size(); ++i) {
    const auto r = top.relative_order(i);
    if (i >= small->size()) {
      if (!r || *r != 1) return false;
      continue;
    }
    if (r != gn.relative_order(i)) return false;
  }

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < small->size(); ++i) {
    const auto r = gn.relative_order(i);
    if (!r || *r != 1) live.push_back(i);
  }
  auto agree = [&](const NilElement& in_big, const NilElement& in_small) {
    const NilElement a = top.coset_form(in_big);
    for (std::size_t q = small->size(); q < big->size(); ++q)
      if (a[q] != 0) return false;
    return truncate(a, small) == gn.coset_form(in_small);
  };
  for (std::size_t i : live) {
    const NilElement bi = big->basis_element(i);
    const NilElement si = small->basis_element(i);
    const auto r = gn.relative_order(i);
    if (r && !agree(power(bi, *r), power(si, *r))) return false;
    for (std::size_t j : live) {
      if (j <= i) continue;
      const NilElement bj = big->basis_element(j);
      const NilElement sj = small->basis_element(j);
      if (!agree(inverse(bi) * bj * bi, inverse(si) * sj * si)) return false;
      if (!r && !agree(bi * bj * inverse(bi), si * sj * inverse(si)))
        return false;
    }
  }
  return true;
}

}  // namespace

std::string CyclicFamily::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < orders.size(); ++i)
    os << (i ? "," : "") << orders[i].get_str();
  return os.str();
}

CyclicFamily parse_family(const std::string& text) {
  CyclicFamily fam;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string tok = text.substr(start, end - start);
    if (tok.empty() ||
        !std::all_of(tok.begin(), tok.end(),
                     [](unsigned char ch) { return ch >= '0' && ch <= '9'; }))
      throw std::invalid_argument("invalid cyclic order '" + tok +
                                  "': expected a nonnegative integer");
    fam.orders.emplace_back(tok);
    start = end + 1;
  }
  return fam;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::CoverConstructed: return "CoverConstructed";
    case Decision::SelfCover: return "SelfCover";
    case Decision::NoCover: return "NoCover";
  }
  return "unknown";
}

bool CoverReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const auto& kv) { return kv.second; });
}

std::vector<NilElement> relator_elements(const CyclicFamily& fam,
                                         const NilContextPtr& ctx) {
  std::vector<NilElement> rel;
  for (int i = 0; i < fam.rank(); ++i) {
    const Int& e = fam.orders[static_cast<std::size_t>(i)];
    if (e > 0) rel.push_back(power(ctx->generator(i + 1), e));
  }
  return rel;
}

PcQuotient nilpotent_product(const CyclicFamily& fam, int n) {
  validate(fam, n, 0, false);
  auto ctx = NilContext::create(fam.rank(), n);
  return PcQuotient(ctx, normal_closure(relator_elements(fam, ctx), ctx));
}

int class_of(const PcQuotient& q) {
  const auto& ctx = q.context();
  for (std::size_t i = ctx->size(); i-- > 0;)
    if (!contains(q.divisor(), ctx->basis_element(i)))
      return ctx->basis().weight(i);
  return 0;
}

AbelianInvariants baer_invariant(const CyclicFamily& fam, int n, int c) {
  validate(fam, n, c, true);
  auto ctx = NilContext::create(fam.rank(), n + c);
  const SubgroupSequence r =
      with_gamma(normal_closure(relator_elements(fam, ctx), ctx), n + 1);
  const SubgroupSequence numerator = intersect_with_gamma(r, c + 1);
  const SubgroupSequence denominator = commutator_subgroup_with(r, c);
  if (!contains(numerator, denominator))
    throw std::logic_error("baer_invariant: [R, _c F] is not inside R cap gamma_{c+1}");
  return subquotient_invariants(numerator, denominator);
}

CoveringGroup covering_group(const CyclicFamily& fam, int n, int c) {
  CoverPieces p = build_cover(fam, n, c);
  if (!p.cartesian_identity)
    throw std::logic_error("cartesian subgroup differs from gamma_2");
  if (!p.commutator_recurrence)
    throw std::logic_error("[J_n, _c L] differs from gamma_{n+c+1}");
  return CoveringGroup{PcQuotient(p.ctx, p.relators), p.kernel, true, true};
}

CoverReport verify_cover(const CyclicFamily& fam, int n, int c) {
  CoverPieces p = build_cover(fam, n, c);
  const PcQuotient cover(p.ctx, p.relators);
  const PcQuotient gn = nilpotent_product(fam, n);

  CoverReport rep;
  rep.family = fam;
  rep.n = n;
  rep.c = c;
  rep.decision = Decision::CoverConstructed;
  rep.product_class = class_of(gn);
  rep.product_order = gn.order();
  rep.has_cover = true;
  rep.cover_order = cover.order();
  rep.kernel = subquotient_invariants(p.kernel, p.relators);
  rep.baer = baer_invariant(fam, n, c);

  const bool exact = contains(p.kernel, p.relators) &&
                     same_presentation(PcQuotient(p.ctx, p.kernel), gn);
  // [P, _c S] = 1 certifies P <= Z_c(S).
  const bool central =
      contains(p.relators, commutator_subgroup_with(p.kernel, c));
  const bool in_gamma = contains(with_gamma(p.relators, c + 1), p.kernel);

  rep.checks = {
      {"exactness", exact},
      {"centrality", central},
      {"gamma_membership", in_gamma},
      {"kernel_matches_multiplier", *rep.kernel == rep.baer},
      {"cartesian_identity", p.cartesian_identity},
      {"commutator_recurrence", p.commutator_recurrence},
  };
  return rep;
}

CoverReport decide(const CyclicFamily& fam, int n, int c) {
  validate(fam, n, c, true);
  if (n >= c) return verify_cover(fam, n, c);

  const PcQuotient gn = nilpotent_product(fam, n);
  CoverReport rep;
  rep.family = fam;
  rep.n = n;
  rep.c = c;
  rep.product_class = class_of(gn);
  rep.product_order = gn.order();
  rep.baer = baer_invariant(fam, n, c);
  if (rep.baer.is_trivial()) {
    rep.decision = Decision::SelfCover;
    rep.has_cover = true;
    rep.cover_order = rep.product_order;
    rep.kernel = AbelianInvariants{};
  } else {
    // Nilpotent of class <= n < c with nontrivial multiplier: no cover.
    rep.decision = Decision::NoCover;
  }
  return rep;
}

}  // namespace nilcover
