#include "nilcover/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "nilcover/collect.hpp"
#include "nilcover/covering.hpp"
#include "nilcover/report.hpp"
#include "nilcover/witt_hall.hpp"

namespace nilcover::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void check_rank(int m) {
  if (m < 1) throw UsageError("rank must be at least 1");
  if (m > kMaxRank)
    throw UsageError("rank " + std::to_string(m) + " exceeds the rank bound " +
                     std::to_string(kMaxRank));
}

void check_class(int k, const char* what) {
  if (k < 1) throw UsageError(std::string(what) + " must be at least 1");
  if (k > kMaxClass)
    throw UsageError(std::string(what) + " = " + std::to_string(k) +
                     " exceeds the class bound " + std::to_string(kMaxClass));
}

void check_basis(int m, int k) {
  const Int size = basis_size(m, k);
  if (size > static_cast<unsigned long>(kMaxBasisSize))
    throw UsageError("Hall basis of rank " + std::to_string(m) + " and class " +
                     std::to_string(k) + " has " + to_string(size) +
                     " elements, exceeding the basis bound " +
                     std::to_string(kMaxBasisSize));
}

CyclicFamily family_arg(const std::string& text) {
  CyclicFamily fam;
  try {
    fam = parse_family(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--orders: ") + e.what());
  }
  check_rank(fam.rank());
  return fam;
}

// n + c is the class of the ambient context for baer, cover and decide.
void check_nc(const CyclicFamily& fam, int n, int c) {
  if (n < 1) throw UsageError("n must be at least 1");
  if (c < 1) throw UsageError("c must be at least 1");
  check_class(n + c, "n + c");
  check_basis(fam.rank(), n + c);
}

std::string witt_cmd(int m, int i, bool json) {
  if (m < 1) throw UsageError("rank must be at least 1");
  if (i < 1) throw UsageError("weight must be at least 1");
  const Int v = witt_rank(m, i);
  if (!json) return to_string(v) + "\n";
  Json j;
  j["command"] = "witt";
  j["rank"] = m;
  j["weight"] = i;
  j["value"] = int_json(v);
  return j.dump(2) + "\n";
}

std::string basis_cmd(int m, int k, bool json) {
  check_rank(m);
  check_class(k, "class");
  check_basis(m, k);
  const HallBasis basis = enumerate_basis(m, k);
  if (!json) {
    std::string s;
    for (std::size_t i = 0; i < basis.size(); ++i) s += basis.render(i) + "\n";
    return s;
  }
  Json list = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Json e;
    e["index"] = i + 1;
    e["weight"] = basis.weight(i);
    e["commutator"] = basis.render(i);
    list.push_back(std::move(e));
  }
  Json j;
  j["command"] = "basis";
  j["rank"] = m;
  j["class"] = k;
  j["basis"] = std::move(list);
  return j.dump(2) + "\n";
}

// Abelianisation of G_n: relative orders of the weight-one generators modulo
// gamma_2 of the quotient.
AbelianInvariants abelian_invariants(const CyclicFamily& fam) {
  std::vector<Int> diag;
  for (const Int& e : fam.orders) diag.push_back(e);
  return invariants_from_diagonal(diag, 0);
}

std::string nilprod_cmd(const CyclicFamily& fam, int n, bool json) {
  if (n < 1) throw UsageError("n must be at least 1");
  check_class(n, "n");
  check_basis(fam.rank(), n);
  const PcQuotient q = nilpotent_product(fam, n);
  const HallBasis& basis = q.context()->basis();
  const auto order = q.order();
  const int cls = class_of(q);
  const AbelianInvariants ab = abelian_invariants(fam);
  if (!json) {
    std::ostringstream os;
    os << "orders " << fam.str() << "\n";
    os << "n " << n << "\n";
    os << "order " << order_text(order) << "\n";
    os << "class " << cls << "\n";
    os << "abelian " << ab.str() << "\n";
    for (std::size_t i = 0; i < basis.size(); ++i)
      os << "relative_order " << basis.render(i) << " "
         << order_text(q.relative_order(i)) << "\n";
    return os.str();
  }
  Json rel = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Json e;
    e["commutator"] = basis.render(i);
    e["relative_order"] = order_json(q.relative_order(i));
    rel.push_back(std::move(e));
  }
  Json j;
  j["command"] = "nilprod";
  j["orders"] = family_json(fam);
  j["n"] = n;
  j["order"] = order_json(order);
  j["class"] = cls;
  j["abelian"] = invariants_json(ab);
  j["relative_orders"] = std::move(rel);
  return j.dump(2) + "\n";
}

std::string baer_cmd(const CyclicFamily& fam, int n, int c, bool json) {
  check_nc(fam, n, c);
  const AbelianInvariants inv = baer_invariant(fam, n, c);
  if (!json) return "baer " + inv.str() + "\n";
  Json j;
  j["command"] = "baer";
  j["orders"] = family_json(fam);
  j["n"] = n;
  j["c"] = c;
  j["baer"] = invariants_json(inv);
  return j.dump(2) + "\n";
}

struct Outcome {
  std::string text;
  int code = kExitOk;
};

Outcome cover_cmd(const CyclicFamily& fam, int n, int c, bool verify,
                  bool json) {
  check_nc(fam, n, c);
  if (n < c)
    throw UsageError("cover requires n >= c; use decide for n < c");
  const CoverReport r = verify_cover(fam, n, c);
  Outcome o;
  o.text = json ? report_json(r, "cover", verify, verify, false).dump(2) + "\n"
                : report_text(r, verify, verify, false);
  if (verify && !r.all_checks_pass()) o.code = kExitCheckFailed;
  return o;
}

Outcome decide_cmd(const CyclicFamily& fam, int n, int c, bool json) {
  check_nc(fam, n, c);
  const CoverReport r = decide(fam, n, c);
  Outcome o;
  o.text = json ? report_json(r, "decide", true, true, true).dump(2) + "\n"
                : report_text(r, true, true, true);
  if (!r.all_checks_pass()) o.code = kExitCheckFailed;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Nilpotent products of cyclic groups and their covers",
               "nilcover"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a single JSON document");

  int rank = 0, weight = 0, cls = 0, n = 0, c = 0;
  std::string orders;
  bool verify = false;

  auto* witt = app.add_subcommand("witt", "Witt rank alpha_i");
  witt->add_option("--rank", rank, "Number of generators")->required();
  witt->add_option("--weight", weight, "Commutator weight")->required();

  auto* basis = app.add_subcommand("basis", "List the Hall basis");
  basis->add_option("--rank", rank, "Number of generators")->required();
  basis->add_option("--class", cls, "Nilpotency class")->required();

  auto add_family = [&](CLI::App* sub, bool with_c) {
    sub->add_option("--orders", orders, "Comma separated orders, 0 = infinite")
        ->required();
    sub->add_option("--n", n, "Class of the nilpotent product")->required();
    if (with_c) sub->add_option("--c", c, "Variety class")->required();
  };
  auto* nilprod = app.add_subcommand("nilprod", "n-th nilpotent product");
  add_family(nilprod, false);
  auto* baer = app.add_subcommand("baer", "Baer invariant N_cM(G_n)");
  add_family(baer, true);
  auto* cover = app.add_subcommand("cover", "Covering group for n >= c");
  add_family(cover, true);
  cover->add_flag("--verify", verify, "Run and report all checks");
  auto* dec = app.add_subcommand("decide", "Existence of a covering group");
  add_family(dec, true);

  // CLI11 expects argument order reversed when given a vector.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Outcome o;
    if (*witt) {
      o.text = witt_cmd(rank, weight, json);
    } else if (*basis) {
      o.text = basis_cmd(rank, cls, json);
    } else if (*nilprod) {
      o.text = nilprod_cmd(family_arg(orders), n, json);
    } else if (*baer) {
      o.text = baer_cmd(family_arg(orders), n, c, json);
    } else if (*cover) {
      o = cover_cmd(family_arg(orders), n, c, verify, json);
    } else {
      o = decide_cmd(family_arg(orders), n, c, json);
    }
    out << o.text;
    return o.code;
  } catch (const std::invalid_argument& e) {
    // UsageError and BoundsError both land here.
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace nilcover::cli
