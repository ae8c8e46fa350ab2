#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nilcover/covering.hpp"

namespace nilcover {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json int_json(const Int& v);
/// nullopt renders as "infinite".
Json order_json(const std::optional<Int>& v);
std::string order_text(const std::optional<Int>& v);

Json invariants_json(const AbelianInvariants& inv);
/// The orders as given, 0 for an infinite factor.
Json family_json(const CyclicFamily& fam);

/// Fields: command, orders, n, c, order, class, kernel, baer, checks,
/// decision. Absent parts of the report are omitted.
Json report_json(const CoverReport& r, const std::string& command,
                 bool with_baer, bool with_checks, bool with_decision);

/// One "key value" line per field, same selection as report_json.
std::string report_text(const CoverReport& r, bool with_baer,
                        bool with_checks, bool with_decision);

}  // namespace nilcover
