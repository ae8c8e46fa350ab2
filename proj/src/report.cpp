#include "nilcover/report.hpp"

#include <sstream>

namespace nilcover {

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

Json order_json(const std::optional<Int>& v) {
  if (!v) return "infinite";
  return int_json(*v);
}

std::string order_text(const std::optional<Int>& v) {
  return v ? to_string(*v) : std::string("infinite");
}

Json invariants_json(const AbelianInvariants& inv) {
  Json torsion = Json::array();
  for (const Int& t : inv.torsion) torsion.push_back(int_json(t));
  Json j;
  j["torsion"] = std::move(torsion);
  j["free_rank"] = inv.free_rank;
  return j;
}

Json family_json(const CyclicFamily& fam) {
  Json a = Json::array();
  for (const Int& e : fam.orders) a.push_back(int_json(e));
  return a;
}

Json report_json(const CoverReport& r, const std::string& command,
                 bool with_baer, bool with_checks, bool with_decision) {
  Json j;
  j["command"] = command;
  j["orders"] = family_json(r.family);
  j["n"] = r.n;
  j["c"] = r.c;
  if (r.has_cover) j["order"] = order_json(r.cover_order);
  j["class"] = r.product_class;
  if (r.kernel) j["kernel"] = invariants_json(*r.kernel);
  if (with_baer) j["baer"] = invariants_json(r.baer);
  if (with_checks && !r.checks.empty()) {
    Json checks;
    for (const auto& [name, ok] : r.checks) checks[name] = ok;
    j["checks"] = std::move(checks);
  }
  if (with_decision) j["decision"] = to_string(r.decision);
  return j;
}

std::string report_text(const CoverReport& r, bool with_baer,
                        bool with_checks, bool with_decision) {
  std::ostringstream os;
  os << "orders " << r.family.str() << "\n";
  os << "n " << r.n << "\n";
  os << "c " << r.c << "\n";
  os << "product_order " << order_text(r.product_order) << "\n";
  os << "class " << r.product_class << "\n";
  if (r.has_cover) os << "order " << order_text(r.cover_order) << "\n";
  if (r.kernel) os << "kernel " << r.kernel->str() << "\n";
  if (with_baer) os << "baer " << r.baer.str() << "\n";
  if (with_checks)
    for (const auto& [name, ok] : r.checks)
      os << "check " << name << " " << (ok ? "true" : "false") << "\n";
  if (with_decision) os << "decision " << to_string(r.decision) << "\n";
  return os.str();
}

}  // namespace nilcover
