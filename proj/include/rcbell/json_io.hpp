#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

#include "rcbell/audit.hpp"
#include "rcbell/box.hpp"
#include "rcbell/constraints.hpp"
#include "rcbell/functionals.hpp"
#include "rcbell/geometry.hpp"
#include "rcbell/polytope.hpp"

namespace rcbell {

using Json = nlohmann::ordered_json;

/// Malformed input files (schema, ranges, duplicates). Distinct from
/// invariant failures, which are reported by validate()/check().
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using BoxVariant = std::variant<RationalBox, FloatBox>;

Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

/// {"scenario": ..., "kind": "rational"|"float", "entries": [{"a", "x", "p"}]}
/// Zero entries are omitted; rational round-trips are bit-exact.
Json box_to_json(const RationalBox& box);
Json box_to_json(const FloatBox& box);
Json box_to_json(const BoxVariant& box);
BoxVariant box_from_json(const Json& j);

Json functional_to_json(const BellFunctional& f);
BellFunctional functional_from_json(const Json& j);

/// {"kind": "ns"} | {"kind": "rc-line", "order": [...]} |
/// {"kind": "custom", "subsets": [[...], ...]}
Json regime_to_json(const ConstraintRegime& regime);
ConstraintRegime regime_from_json(const Json& j);

std::vector<SpacetimeEvent> events_from_json(const Json& j);
Json events_to_json(const std::vector<SpacetimeEvent>& events);

Json validation_report_to_json(const ValidationReport& report);

template <class S>
Json check_report_to_json(const CheckReport<S>& report) {
    Json j;
    j["passes"] = report.passes;
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json e;
        e["subset"] = v.subset;
        e["a_subset"] = v.a_subset;
        e["x_subset"] = v.x_subset;
        e["x_complement"] = v.x_complement;
        e["x_complement_ref"] = v.x_complement_ref;
        e["discrepancy"] = scalar_kind<S>::str(v.discrepancy);
        violations.push_back(std::move(e));
    }
    j["violations"] = std::move(violations);
    return j;
}

Json lp_witness_to_json(const PolytopeOptimum& opt);
Json rcbl_witness_to_json(const RcblOptimum& opt);
Json bl_membership_to_json(const BlMembership& result);

/// RFC-4180 CSV: quotes fields containing separators/quotes/newlines.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace rcbell
