#include "rcbell/json_io.hpp"

#include <set>
#include <sstream>

namespace rcbell {

namespace {

Tuple tuple_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    Tuple t;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw FormatError(std::string(what) + " entries must be integers");
        t.push_back(v.get<int>());
    }
    return t;
}

template <class S>
Json box_entries(const Box<S>& box) {
    const Scenario& scen = box.scenario();
    Json entries = Json::array();
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi)
        for (std::size_t ai = 0; ai < scen.output_count(); ++ai) {
            const S& p = box.at(xi, ai);
            if (p == S(0)) continue;
            Json e;
            e["a"] = scen.output_tuple(ai);
            e["x"] = scen.input_tuple(xi);
            if constexpr (scalar_kind<S>::exact)
                e["p"] = rational_to_string(p);
            else
                e["p"] = p;
            entries.push_back(std::move(e));
        }
    return entries;
}

}  // namespace

Json scenario_to_json(const Scenario& scenario) {
    Json j;
    j["parties"] = scenario.parties();
    j["inputs"] = scenario.inputs();
    j["outputs"] = scenario.outputs();
    return j;
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("inputs") || !j.contains("outputs"))
        throw FormatError("scenario: expected object with inputs/outputs");
    std::vector<int> inputs, outputs;
    for (const auto& v : j.at("inputs")) inputs.push_back(v.get<int>());
    for (const auto& v : j.at("outputs")) outputs.push_back(v.get<int>());
    if (j.contains("parties") && j.at("parties").get<int>() != static_cast<int>(inputs.size()))
        throw FormatError("scenario: parties field disagrees with list lengths");
    try {
        return Scenario(std::move(inputs), std::move(outputs));
    } catch (const std::exception& e) {
        throw FormatError(std::string("scenario: ") + e.what());
    }
}

Json box_to_json(const RationalBox& box) {
    Json j;
    j["scenario"] = scenario_to_json(box.scenario());
    j["kind"] = "rational";
    j["entries"] = box_entries(box);
    return j;
}

Json box_to_json(const FloatBox& box) {
    Json j;
    j["scenario"] = scenario_to_json(box.scenario());
    j["kind"] = "float";
    j["entries"] = box_entries(box);
    return j;
}

Json box_to_json(const BoxVariant& box) {
    return std::visit([](const auto& b) { return box_to_json(b); }, box);
}

BoxVariant box_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("scenario") || !j.contains("kind"))
        throw FormatError("box: expected object with scenario/kind");
    const Scenario scen = scenario_from_json(j.at("scenario"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "rational" && kind != "float") throw FormatError("box: kind must be rational or float");
    const Json entries = j.value("entries", Json::array());
    std::set<std::size_t> filled;

    auto each_entry = [&](auto&& put) {
        for (const auto& e : entries) {
            if (!e.is_object() || !e.contains("a") || !e.contains("x") || !e.contains("p"))
                throw FormatError("box entry: expected {a, x, p}");
            const Tuple a = tuple_from_json(e.at("a"), "a");
            const Tuple x = tuple_from_json(e.at("x"), "x");
            std::size_t idx;
            try {
                idx = scen.flat_index(x, a);
            } catch (const std::exception& err) {
                throw FormatError(std::string("box entry: ") + err.what());
            }
            if (!filled.insert(idx).second) throw FormatError("box entry: duplicate (a, x) cell");
            put(idx, e.at("p"));
        }
    };

    if (kind == "rational") {
        RationalBox box(scen);
        each_entry([&](std::size_t idx, const Json& p) {
            Rational r;
            if (p.is_string()) {
                try {
                    r = rational_from_string(p.get<std::string>());
                } catch (const std::exception& err) {
                    throw FormatError(std::string("box entry: ") + err.what());
                }
            } else if (p.is_number_integer()) {
                r = Rational(p.get<long long>());
            } else {
                throw FormatError("box entry: rational p must be a string or integer");
            }
            box.at(idx / scen.output_count(), idx % scen.output_count()) = std::move(r);
        });
        return box;
    }
    FloatBox box(scen);
    each_entry([&](std::size_t idx, const Json& p) {
        if (!p.is_number()) throw FormatError("box entry: float p must be a number");
        box.at(idx / scen.output_count(), idx % scen.output_count()) = p.get<double>();
    });
    return box;
}

Json functional_to_json(const BellFunctional& f) {
    Json j;
    j["scenario"] = scenario_to_json(f.scenario);
    j["kind"] = "rational";
    j["name"] = f.name;
    if (!f.bounds.empty()) {
        Json b;
        for (const auto& [k, v] : f.bounds) b[k] = rational_to_string(v);
        j["bounds"] = std::move(b);
    }
    if (!f.approx_bounds.empty()) {
        Json b;
        for (const auto& [k, v] : f.approx_bounds) b[k] = v;
        j["approx_bounds"] = std::move(b);
    }
    Json entries = Json::array();
    const Scenario& scen = f.scenario;
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi)
        for (std::size_t ai = 0; ai < scen.output_count(); ++ai) {
            const Rational& c = f.coeffs[xi * scen.output_count() + ai];
            if (c == 0) continue;
            Json e;
            e["a"] = scen.output_tuple(ai);
            e["x"] = scen.input_tuple(xi);
            e["p"] = rational_to_string(c);
            entries.push_back(std::move(e));
        }
    j["entries"] = std::move(entries);
    return j;
}

BellFunctional functional_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("scenario")) throw FormatError("functional: expected object");
    BellFunctional f(scenario_from_json(j.at("scenario")), j.value("name", std::string()));
    const Scenario& scen = f.scenario;
    std::set<std::size_t> filled;
    for (const auto& e : j.value("entries", Json::array())) {
        const Tuple a = tuple_from_json(e.at("a"), "a");
        const Tuple x = tuple_from_json(e.at("x"), "x");
        std::size_t idx;
        try {
            idx = scen.flat_index(x, a);
        } catch (const std::exception& err) {
            throw FormatError(std::string("functional entry: ") + err.what());
        }
        if (!filled.insert(idx).second) throw FormatError("functional entry: duplicate cell");
        const Json& p = e.at("p");
        f.coeffs[idx] = p.is_string() ? rational_from_string(p.get<std::string>())
                                      : Rational(p.get<long long>());
    }
    const Json bounds = j.value("bounds", Json::object());
    for (const auto& [k, v] : bounds.items()) f.bounds[k] = rational_from_string(v.get<std::string>());
    const Json approx = j.value("approx_bounds", Json::object());
    for (const auto& [k, v] : approx.items()) f.approx_bounds[k] = v.get<double>();
    return f;
}

Json regime_to_json(const ConstraintRegime& regime) {
    Json j;
    switch (regime.kind()) {
        case ConstraintRegime::Kind::full_ns:
            j["kind"] = "ns";
            break;
        case ConstraintRegime::Kind::line_rc:
            j["kind"] = "rc-line";
            j["order"] = regime.order();
            break;
        case ConstraintRegime::Kind::custom:
            j["kind"] = "custom";
            j["subsets"] = regime.custom_subsets();
            break;
    }
    return j;
}

ConstraintRegime regime_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ns") return ConstraintRegime::full_ns();
    if (kind == "rc-line") {
        std::vector<int> order;
        for (const auto& v : j.at("order")) order.push_back(v.get<int>());
        return ConstraintRegime::line_rc(std::move(order));
    }
    if (kind == "custom") {
        std::vector<std::vector<int>> subsets;
        for (const auto& s : j.at("subsets")) {
            std::vector<int> subset;
            for (const auto& v : s) subset.push_back(v.get<int>());
            subsets.push_back(std::move(subset));
        }
        return ConstraintRegime::custom(std::move(subsets));
    }
    throw FormatError("regime: kind must be ns, rc-line or custom");
}

std::vector<SpacetimeEvent> events_from_json(const Json& j) {
    if (!j.is_array()) throw FormatError("events: expected an array");
    std::vector<SpacetimeEvent> events;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("t") || !e.contains("r"))
            throw FormatError("event: expected {t, r}");
        SpacetimeEvent ev;
        ev.t = e.at("t").get<double>();
        for (const auto& v : e.at("r")) ev.r.push_back(v.get<double>());
        if (ev.dim() < 1 || ev.dim() > 3) throw FormatError("event: r must have 1..3 coordinates");
        events.push_back(std::move(ev));
    }
    return events;
}

Json events_to_json(const std::vector<SpacetimeEvent>& events) {
    Json j = Json::array();
    for (const auto& e : events) {
        Json o;
        o["t"] = e.t;
        o["r"] = e.r;
        j.push_back(std::move(o));
    }
    return j;
}

Json validation_report_to_json(const ValidationReport& report) {
    Json j;
    j["passes"] = report.passes;
    Json issues = Json::array();
    for (const auto& issue : report.issues) {
        Json e;
        e["kind"] = issue.kind == ValidationIssue::Kind::negative_entry ? "negative-entry" : "row-sum";
        e["x"] = issue.x;
        if (issue.kind == ValidationIssue::Kind::negative_entry) e["a"] = issue.a;
        e["value"] = issue.value;
        issues.push_back(std::move(e));
    }
    j["issues"] = std::move(issues);
    return j;
}

Json lp_witness_to_json(const PolytopeOptimum& opt) {
    Json j;
    j["value"] = rational_to_string(opt.value);
    j["witness"] = box_to_json(opt.witness);
    return j;
}

Json rcbl_witness_to_json(const RcblOptimum& opt) {
    Json j;
    j["value"] = rational_to_string(opt.value);
    j["family"] = opt.family;
    j["strategy"] = opt.strategy;
    j["component"] = box_to_json(opt.component);
    j["witness"] = box_to_json(opt.witness);
    return j;
}

Json bl_membership_to_json(const BlMembership& result) {
    Json j;
    j["inside"] = result.inside;
    j["distance"] = rational_to_string(result.distance);
    j["distance_float"] = to_double(result.distance);
    Json w = Json::array();
    for (const auto& [label, weight] : result.weights) {
        Json e;
        e["vertex"] = label;
        e["weight"] = rational_to_string(weight);
        w.push_back(std::move(e));
    }
    j["weights"] = std::move(w);
    j["closest"] = box_to_json(result.closest);
    return j;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += "\r\n";
    return out;
}

}  // namespace rcbell
