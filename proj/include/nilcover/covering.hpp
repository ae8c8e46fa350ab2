#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcover/intlinalg.hpp"
#include "nilcover/pcgroup.hpp"

namespace nilcover {

/// Family of cyclic groups A_i = Z/e_i; e_i = 0 stands for Z.
struct CyclicFamily {
  std::vector<Int> orders;

  int rank() const { return static_cast<int>(orders.size()); }
  /// Comma separated, e.g. "2,2,0".
  std::string str() const;
};

/// Parses "2,2,0"; throws std::invalid_argument on malformed input.
CyclicFamily parse_family(const std::string& text);

enum class Decision { CoverConstructed, SelfCover, NoCover };

std::string to_string(Decision d);

struct CoverReport {
  CyclicFamily family;
  int n = 0;
  int c = 0;
  Decision decision = Decision::NoCover;

  int product_class = 0;                   // class of G_n
  std::optional<Int> product_order;        // |G_n|, nullopt = infinite
  bool has_cover = false;
  std::optional<Int> cover_order;          // |S_n|, nullopt = infinite
  std::optional<AbelianInvariants> kernel; // invariants of P_n
  AbelianInvariants baer;                  // N_cM(G_n)
  /// Named verification results, in a fixed order. Empty unless a cover was
  /// constructed.
  std::vector<std::pair<std::string, bool>> checks;

  bool all_checks_pass() const;
};

/// x_i^e_i for every finite e_i.
std::vector<NilElement> relator_elements(const CyclicFamily& fam,
                                         const NilContextPtr& ctx);

/// The n-th nilpotent product of the family: F/gamma_{n+1}(F) modulo the
/// normal closure of the x_i^e_i.
PcQuotient nilpotent_product(const CyclicFamily& fam, int n);

/// Largest w with gamma_w of the quotient nontrivial; 0 for the trivial group.
int class_of(const PcQuotient& q);

/// N_cM(G_n) = (R cap gamma_{c+1}F) / [R, _c F] for R the kernel of
/// F -> G_n, computed modulo gamma_{n+c+1}F, which lies inside [R, _c F].
AbelianInvariants baer_invariant(const CyclicFamily& fam, int n, int c);

struct CoveringGroup {
  /// S_n = L / [J_n, _c L], realised as F/gamma_{n+c+1} modulo the relators.
  PcQuotient cover;
  /// Preimage of P_n = J_n / [J_n, _c L] in the ambient context.
  SubgroupSequence kernel_preimage;
  bool cartesian_identity = false;
  bool commutator_recurrence = false;
};

/// Requires n >= c. The identities J_n = gamma_{n+1}(L) and
/// [J_n, _c L] = gamma_{n+c+1}(L) the construction rests on are checked and
/// a std::logic_error is thrown if either fails.
CoveringGroup covering_group(const CyclicFamily& fam, int n, int c);

/// Builds the cover and records every check; failures are reported, not
/// thrown. Requires n >= c.
CoverReport verify_cover(const CyclicFamily& fam, int n, int c);

/// n >= c: verify_cover. n < c: the group is its own cover when the
/// multiplier is trivial and has none otherwise.
CoverReport decide(const CyclicFamily& fam, int n, int c);

}  // namespace nilcover
