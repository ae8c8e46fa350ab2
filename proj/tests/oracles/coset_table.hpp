#pragma once

// Coset enumeration (HLT with coincidences) over the trivial subgroup of a
// finitely presented group. The resulting table is the regular action, so
// it is the Cayley graph of the group itself. Used to check pc quotients
// against a presentation without any collection.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nilcover/pcgroup.hpp"

namespace nilcover::oracle {

// Letters: +g / -g for generator g (1-based).
using FpWord = std::vector<int>;

class CosetTable {
 public:
  // Returns nullopt when more than max_cosets are needed.
  static std::optional<CosetTable> enumerate(int gens,
                                             const std::vector<FpWord>& rels,
                                             std::size_t max_cosets) {
    CosetTable t(gens);
    t.new_coset();
    for (std::size_t c = 0; c < t.table_.size(); ++c) {
      for (const FpWord& r : rels) {
        if (!t.live(c)) break;
        t.scan_and_fill(c, r);
      }
      for (int x = 0; x < 2 * gens && t.live(c); ++x)
        if (t.table_[c][x] < 0) t.define(c, x);
      if (t.table_.size() > max_cosets) return std::nullopt;
    }
    t.compact();
    return t;
  }

  std::size_t size() const { return table_.size(); }
  int gens() const { return gens_; }
  // Coset reached from c by generator g (1-based, negative for inverse).
  int act(int c, int g) const { return table_[c][col(g)]; }

 private:
  explicit CosetTable(int gens) : gens_(gens) {}

  static int inv(int x) { return x ^ 1; }
  static int col(int g) { return g > 0 ? 2 * (g - 1) : 2 * (-g - 1) + 1; }

  bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int new_coset() {
    table_.emplace_back(2 * gens_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  void define(int c, int x) {
    const int d = new_coset();
    table_[c][x] = d;
    table_[d][inv(x)] = c;
  }

  void scan_and_fill(int c, const FpWord& w) {
    std::vector<int> cols;
    for (int g : w) cols.push_back(col(g));
    int f = c, b = c;
    int i = 0, j = static_cast<int>(cols.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][cols[i]] >= 0) f = table_[f][cols[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][inv(cols[j])] >= 0)
        b = table_[b][inv(cols[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][cols[i]] = b;
        table_[b][inv(cols[i])] = f;
        return;
      }
      define(f, cols[i]);
    }
  }

  int rep(int k) {
    int r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      const int next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int e = queue[q];
      for (int x = 0; x < 2 * gens_; ++x) {
        const int f = table_[e][x];
        if (f < 0) continue;
        table_[f][inv(x)] = -1;
        const int e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] >= 0) {
          merge(f1, table_[e1][x], queue);
        } else if (table_[f1][inv(x)] >= 0) {
          merge(e1, table_[f1][inv(x)], queue);
        } else {
          table_[e1][x] = f1;
          table_[f1][inv(x)] = e1;
        }
      }
    }
  }

  void compact() {
    std::vector<int> index(table_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (live(c)) index[c] = next++;
    std::vector<std::vector<int>> out;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      std::vector<int> row(2 * gens_);
      for (int x = 0; x < 2 * gens_; ++x) row[x] = index[rep(table_[c][x])];
      out.push_back(std::move(row));
    }
    table_ = std::move(out);
    parent_.resize(table_.size());
    for (std::size_t c = 0; c < parent_.size(); ++c)
      parent_[c] = static_cast<int>(c);
  }

  int gens_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

// [a, b] = a^-1 b^-1 a b on words.
inline FpWord fp_inverse(const FpWord& w) {
  FpWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

inline FpWord fp_commutator(const FpWord& a, const FpWord& b) {
  FpWord r = fp_inverse(a);
  const FpWord bi = fp_inverse(b);
  r.insert(r.end(), bi.begin(), bi.end());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// x_i^e_i for finite e_i, and every left-normed commutator of weight k+1 in
// the generators: a presentation of the k-th nilpotent product.
inline std::vector<FpWord> nilpotent_product_relators(
    const std::vector<int>& orders, int k) {
  const int m = static_cast<int>(orders.size());
  std::vector<FpWord> rels;
  for (int g = 1; g <= m; ++g)
    if (orders[g - 1] > 0) rels.push_back(FpWord(orders[g - 1], g));
  std::vector<FpWord> layer;
  for (int g = 1; g <= m; ++g) layer.push_back({g});
  for (int w = 2; w <= k + 1; ++w) {
    std::vector<FpWord> next;
    for (const FpWord& u : layer)
      for (int g = 1; g <= m; ++g) next.push_back(fp_commutator(u, {g}));
    layer = std::move(next);
  }
  rels.insert(rels.end(), layer.begin(), layer.end());
  return rels;
}

// Elements of the table group as permutations of the cosets (right regular
// action), indexed by the coset they send 0 to.
inline std::vector<std::vector<int>> regular_permutations(const CosetTable& t) {
  const int n = static_cast<int>(t.size());
  std::vector<std::vector<int>> gen_perm;
  for (int g = 1; g <= t.gens(); ++g) {
    std::vector<int> p(n);
    for (int c = 0; c < n; ++c) p[c] = t.act(c, g);
    gen_perm.push_back(std::move(p));
  }
  std::vector<std::vector<int>> elem(n);
  std::vector<int> id(n);
  for (int c = 0; c < n; ++c) id[c] = c;
  elem[0] = id;
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int c = queue[q];
    for (int g = 0; g < t.gens(); ++g) {
      const int d = t.act(c, g + 1);
      if (!elem[d].empty()) continue;
      // Right action: first elem[c], then the generator.
      std::vector<int> p(n);
      for (int x = 0; x < n; ++x) p[x] = gen_perm[g][elem[c][x]];
      elem[d] = std::move(p);
      queue.push_back(d);
    }
  }
  return elem;
}

// Nilpotency class of the table group, or -1 if gamma stabilises above 1.
inline int table_class(const CosetTable& t) {
  const auto perms = regular_permutations(t);
  const int n = static_cast<int>(t.size());
  auto index_of = [&](const std::vector<int>& p) { return p[0]; };
  auto mul = [&](int a, int b) {  // a then b
    std::vector<int> p(n);
    for (int x = 0; x < n; ++x) p[x] = perms[b][perms[a][x]];
    return index_of(p);
  };
  std::vector<int> inverse(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == 0) inverse[a] = b;
  auto comm = [&](int a, int b) {
    return mul(mul(inverse[a], inverse[b]), mul(a, b));
  };
  std::set<int> gamma;
  for (int a = 0; a < n; ++a) gamma.insert(a);
  int cls = 0;
  while (gamma.size() > 1) {
    std::set<int> next{0};
    for (int a : gamma)
      for (int b = 0; b < n; ++b) next.insert(comm(a, b));
    // Close under multiplication.
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(next.begin(), next.end());
      for (int a : cur)
        for (int b : cur)
          if (next.insert(mul(a, b)).second) grew = true;
    }
    if (next.size() == gamma.size()) return -1;
    gamma = std::move(next);
    ++cls;
  }
  return cls;
}

// True when the pc quotient and the table have the same order and the map
// generator -> generator extends to an isomorphism of Cayley graphs.
inline bool same_cayley_graph(const PcQuotient& q, const CosetTable& t) {
  const auto& ctx = q.context();
  const int m = ctx->rank();
  if (t.gens() != m) return false;
  const auto order = q.order();
  if (!order || *order != static_cast<unsigned long>(t.size())) return false;
  std::vector<std::optional<NilElement>> image(t.size());
  std::map<Exponents, int> seen;
  image[0] = q.coset_form(ctx->identity());
  seen[image[0]->exponents()] = 0;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int c = queue[i];
    for (int g = 1; g <= m; ++g) {
      const int d = t.act(c, g);
      const NilElement e = q.coset_form(*image[c] * ctx->generator(g));
      auto it = seen.find(e.exponents());
      if (image[d]) {
        if (!(*image[d] == e)) return false;
        continue;
      }
      if (it != seen.end()) return false;
      image[d] = e;
      seen[e.exponents()] = d;
      queue.push_back(d);
    }
  }
  return seen.size() == t.size();
}

}  // namespace nilcover::oracle
