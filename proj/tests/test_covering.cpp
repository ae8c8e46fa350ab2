#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <future>
#include <string>
#include <vector>

#include "nilcover/covering.hpp"
#include "nilcover/witt_hall.hpp"
#include "oracles/coset_table.hpp"

using namespace nilcover;

namespace {

CyclicFamily fam(std::vector<long> orders) {
  CyclicFamily f;
  for (long e : orders) f.orders.emplace_back(e);
  return f;
}

std::vector<int> ints(const CyclicFamily& f) {
  std::vector<int> out;
  for (const auto& e : f.orders) out.push_back(static_cast<int>(e.get_si()));
  return out;
}

AbelianInvariants torsion(std::vector<long> t, std::size_t free_rank = 0) {
  AbelianInvariants a;
  for (long x : t) a.torsion.emplace_back(x);
  a.free_rank = free_rank;
  return a;
}

bool check(const CoverReport& r, const std::string& name) {
  for (const auto& [k, v] : r.checks)
    if (k == name) return v;
  FAIL("missing check " << name);
  return false;
}

AbelianInvariants abelian_invariants(const PcQuotient& q) {
  const auto& ctx = q.context();
  const SubgroupSequence v = join_normal(q.divisor(), gamma_subgroup(ctx, 2));
  return subquotient_invariants(gamma_subgroup(ctx, 1), v);
}

const std::vector<CyclicFamily>& theorem_families() {
  static const std::vector<CyclicFamily> f{fam({2, 2}), fam({3, 3}),
                                           fam({2, 4}), fam({2, 2, 2}),
                                           fam({0, 0}), fam({0, 2})};
  return f;
}

int finite_factors(const CyclicFamily& f) {
  int k = 0;
  for (const auto& e : f.orders) k += e != 0;
  return k;
}

}  // namespace

TEST_CASE("family parsing") {
  CHECK(parse_family("2,2,0").orders == fam({2, 2, 0}).orders);
  CHECK(fam({2, 2, 0}).str() == "2,2,0");
  CHECK_THROWS_AS(parse_family(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("2,,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("2,-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("x"), std::invalid_argument);
}

TEST_CASE("nilpotent product examples") {
  const PcQuotient g1 = nilpotent_product(fam({2, 2}), 1);
  CHECK(g1.order() == Int(4));
  CHECK(abelian_invariants(g1) == torsion({2, 2}));

  const PcQuotient g2 = nilpotent_product(fam({2, 2}), 2);
  CHECK(g2.order() == Int(8));
  CHECK(class_of(g2) == 2);

  const PcQuotient f2 = nilpotent_product(fam({0, 0}), 2);
  CHECK_FALSE(f2.order().has_value());
  CHECK(f2.divisor().empty());
  CHECK(f2.context()->size() == 3);
}

TEST_CASE("class examples") {
  CHECK(class_of(nilpotent_product(fam({2, 2}), 2)) == 2);
  const PcQuotient g = nilpotent_product(fam({2, 3}), 2);
  CHECK(class_of(g) == 1);
  CHECK(g.order() == Int(6));
  for (int n = 1; n <= 4; ++n) {
    const PcQuotient t = nilpotent_product(fam({1}), n);
    CHECK(class_of(t) == 0);
    CHECK(t.order() == Int(1));
  }
}

TEST_CASE("class never exceeds n") {
  const std::vector<CyclicFamily> families{
      fam({2, 2}), fam({3, 3}), fam({2, 4}), fam({4, 4}), fam({2, 2, 2}),
      fam({0, 0}), fam({0, 0, 0}), fam({0, 2}), fam({2, 3}), fam({6, 10})};
  for (const auto& f : families) {
    for (int n = 1; n <= 4; ++n) {
      if (f.rank() == 3 && n == 4) continue;
      const int k = class_of(nilpotent_product(f, n));
      CAPTURE(f.str());
      CAPTURE(n);
      CHECK(k <= n);
      bool equal_prime_powers = true;
      for (const auto& e : f.orders) {
        if (e != f.orders[0]) equal_prime_powers = false;
        if (e != 0) {
          Int p = e;
          for (long d = 2; d <= p.get_si(); ++d)
            if (p % d == 0) {
              while (p % d == 0) p /= d;
              if (p != 1) equal_prime_powers = false;
              break;
            }
        }
      }
      if (equal_prime_powers) CHECK(k == n);
    }
  }
}

TEST_CASE("single cyclic factor degenerates") {
  for (int n = 1; n <= 4; ++n) {
    const PcQuotient g = nilpotent_product(fam({7}), n);
    CHECK(g.order() == Int(7));
    CHECK(class_of(g) == 1);
    for (int c = 1; n + c <= 6; ++c) CHECK(baer_invariant(fam({7}), n, c).is_trivial());
  }
  const CoverReport r = verify_cover(fam({7}), 2, 1);
  CHECK(r.all_checks_pass());
  CHECK(r.cover_order == Int(7));
  CHECK(r.kernel->is_trivial());
  const CoverReport z = verify_cover(fam({0}), 3, 2);
  CHECK(z.all_checks_pass());
  CHECK_FALSE(z.cover_order.has_value());
}

TEST_CASE("multiplier examples") {
  CHECK(baer_invariant(fam({0, 0}), 2, 2) == torsion({}, 5));
  CHECK(baer_invariant(fam({2, 2}), 1, 1) == torsion({2}));
  CHECK(baer_invariant(fam({3, 3}), 1, 1) == torsion({3}));
  CHECK(baer_invariant(fam({2, 2, 2}), 1, 1) == torsion({2, 2, 2}));
  for (int n = 1; n <= 3; ++n)
    for (int c = 1; n + c <= 6; ++c)
      CHECK(baer_invariant(fam({5}), n, c).is_trivial());
  // gamma_3 F / gamma_4 F for rank 2.
  CHECK(baer_invariant(fam({0, 0}), 1, 2) == torsion({}, 2));
  // Frozen regression values of the free presentation computation.
  CHECK(baer_invariant(fam({2, 2}), 2, 2) == torsion({2, 4}));
}

TEST_CASE("multiplier of free nilpotent products is free of Witt rank") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 4; ++n)
      for (int c = 1; n + c <= 5; ++c) {
        CyclicFamily f;
        f.orders.assign(static_cast<std::size_t>(m), Int(0));
        Int rank = 0;
        // R = gamma_{n+1}, so the numerator is gamma_{max(n,c)+1}.
        for (int i = std::max(n, c) + 1; i <= n + c; ++i) rank += witt_rank(m, i);
        const AbelianInvariants b = baer_invariant(f, n, c);
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(c);
        CHECK(b.torsion.empty());
        CHECK(Int(static_cast<long>(b.free_rank)) == rank);
      }
}

TEST_CASE("covering group examples") {
  {
    const CoveringGroup g = covering_group(fam({2, 2}), 1, 1);
    CHECK(g.cover.order() == Int(8));
    CHECK(subquotient_invariants(g.kernel_preimage, g.cover.divisor()) ==
          torsion({2}));
    CHECK(g.cartesian_identity);
    CHECK(g.commutator_recurrence);
  }
  {
    const CoveringGroup g = covering_group(fam({0, 0}), 2, 2);
    CHECK_FALSE(g.cover.order().has_value());
    CHECK(g.cover.divisor().empty());
    CHECK(g.cover.context()->cls() == 4);
    CHECK(subquotient_invariants(g.kernel_preimage, g.cover.divisor()) ==
          torsion({}, 5));
  }
  CHECK(covering_group(fam({3, 3}), 1, 1).cover.order() == Int(27));
  CHECK_THROWS_AS(covering_group(fam({2, 2}), 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(covering_group(fam({2, 2}), 5, 4), std::invalid_argument);
}

TEST_CASE("quotients match coset enumeration") {
  int compared = 0;
  for (const auto& f : theorem_families()) {
    if (finite_factors(f) != f.rank()) continue;
    for (int n = 1; n <= 4; ++n) {
      for (int c = 1; c <= n && n + c <= 5; ++c) {
        const CoveringGroup g = covering_group(f, n, c);
        const PcQuotient base = nilpotent_product(f, n);
        CAPTURE(f.str());
        CAPTURE(n);
        CAPTURE(c);
        // |S| = |G_n| |P| through the kernel's relative orders.
        Int kernel_order = 1;
        for (const Int& e :
             subquotient_invariants(g.kernel_preimage, g.cover.divisor()).torsion)
          kernel_order *= e;
        CHECK(*g.cover.order() == *base.order() * kernel_order);
        for (const auto& [q, k] : {std::pair{&g.cover, n + c}, std::pair{&base, n}}) {
          if (*q->order() > 128) continue;
          const auto table = oracle::CosetTable::enumerate(
              f.rank(), oracle::nilpotent_product_relators(ints(f), k), 100000);
          REQUIRE(table.has_value());
          CHECK(Int(static_cast<long>(table->size())) == *q->order());
          CHECK(oracle::same_cayley_graph(*q, *table));
          ++compared;
        }
      }
    }
  }
  CHECK(compared >= 6);
}

TEST_CASE("cover checks over the theorem families") {
  for (const auto& f : theorem_families()) {
    for (int n = 1; n <= 4; ++n) {
      for (int c = 1; c <= n && n + c <= 5; ++c) {
        const CoverReport r = verify_cover(f, n, c);
        CAPTURE(f.str());
        CAPTURE(n);
        CAPTURE(c);
        REQUIRE(r.checks.size() == 6);
        CHECK(r.decision == Decision::CoverConstructed);
        CHECK(check(r, "exactness"));
        CHECK(check(r, "centrality"));
        CHECK(check(r, "gamma_membership"));
        CHECK(check(r, "cartesian_identity"));
        CHECK(check(r, "commutator_recurrence"));
        // The kernel is the multiplier of G_n relative to the free product of
        // the factors. It misses the multiplier of that free product, which
        // is nonzero once two factors carry torsion and c >= 2.
        const bool expected = c == 1 || finite_factors(f) < 2;
        CHECK(check(r, "kernel_matches_multiplier") == expected);
        CHECK((*r.kernel == r.baer) == expected);
      }
    }
  }
}

TEST_CASE("check names and order") {
  const CoverReport r = verify_cover(fam({2, 2}), 1, 1);
  const std::vector<std::string> names{
      "exactness",          "centrality",         "gamma_membership",
      "kernel_matches_multiplier", "cartesian_identity", "commutator_recurrence"};
  REQUIRE(r.checks.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(r.checks[i].first == names[i]);
  CHECK(r.all_checks_pass());
  CHECK(r.cover_order == Int(8));
  CHECK(r.product_order == Int(4));
  CHECK(r.product_class == 1);
  CHECK(*r.kernel == torsion({2}));
}

TEST_CASE("verify examples") {
  const CoverReport free22 = verify_cover(fam({0, 0}), 2, 2);
  CHECK(free22.all_checks_pass());
  CHECK(*free22.kernel == torsion({}, 5));

  const CoverReport triple = verify_cover(fam({2, 2, 2}), 2, 1);
  CHECK(triple.all_checks_pass());
  CHECK(triple.product_order == Int(64));
  CHECK(*triple.kernel == triple.baer);
}

TEST_CASE("decide examples") {
  const CoverReport self = decide(fam({5}), 1, 3);
  CHECK(self.decision == Decision::SelfCover);
  CHECK(self.baer.is_trivial());
  CHECK(self.checks.empty());

  const CoverReport none = decide(fam({0, 0}), 1, 2);
  CHECK(none.decision == Decision::NoCover);
  CHECK(none.baer == torsion({}, 2));
  CHECK_FALSE(none.kernel.has_value());
  CHECK_FALSE(none.has_cover);

  const CoverReport built = decide(fam({2, 2}), 2, 2);
  CHECK(built.decision == Decision::CoverConstructed);
  CHECK(built.has_cover);
  CHECK(*built.kernel == torsion({4}));
  CHECK(built.baer == torsion({2, 4}));

  CHECK(to_string(Decision::CoverConstructed) == "CoverConstructed");
  CHECK(to_string(Decision::SelfCover) == "SelfCover");
  CHECK(to_string(Decision::NoCover) == "NoCover");
}

TEST_CASE("bounds") {
  CHECK_THROWS_AS(decide(fam({2, 2}), 5, 4), BoundsError);
  CHECK_THROWS_AS(baer_invariant(fam({2, 2, 2, 2, 2, 2, 2}), 1, 1), BoundsError);
  CHECK_THROWS_AS(nilpotent_product(fam({2, 2}), 0), std::invalid_argument);
  CHECK_THROWS_AS(baer_invariant(fam({2, 2}), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(nilpotent_product(CyclicFamily{}, 1), std::invalid_argument);
}

TEST_CASE("concurrent verification agrees") {
  const std::vector<std::pair<int, int>> params{{1, 1}, {2, 1}, {2, 2}, {3, 1}};
  std::vector<std::future<CoverReport>> futures;
  for (const auto& [n, c] : params)
    futures.push_back(std::async(std::launch::async, [n, c] {
      return verify_cover(fam({2, 4}), n, c);
    }));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const CoverReport a = futures[i].get();
    const CoverReport b = verify_cover(fam({2, 4}), params[i].first, params[i].second);
    CHECK(a.checks == b.checks);
    CHECK(a.cover_order == b.cover_order);
    CHECK(*a.kernel == *b.kernel);
    CHECK(a.baer == b.baer);
  }
}
