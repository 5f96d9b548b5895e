// Python bindings for the main operations: constructions, constraint checks,
// inequality evaluation, exact polytope optimization, geometry tests and the
// quantum presets. Exact rationals cross the boundary as "num/den" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcbell/audit.hpp"
#include "rcbell/constructions.hpp"
#include "rcbell/geometry.hpp"
#include "rcbell/json_io.hpp"
#include "rcbell/polytope.hpp"
#include "rcbell/quantum.hpp"

namespace py = pybind11;
using namespace rcbell;

namespace {

ConstraintRegime regime_from_args(const std::string& kind, const std::vector<int>& order,
                                  const std::vector<std::vector<int>>& subsets) {
    if (kind == "ns") return ConstraintRegime::full_ns();
    if (kind == "rc-line") return ConstraintRegime::line_rc(order);
    if (kind == "custom") return ConstraintRegime::custom(subsets);
    throw std::invalid_argument("regime kind must be ns, rc-line or custom");
}

template <class S>
py::dict check_to_dict(const CheckReport<S>& rep) {
    py::dict d;
    d["passes"] = rep.passes;
    py::list violations;
    for (const auto& v : rep.violations) {
        py::dict e;
        e["subset"] = v.subset;
        e["a_subset"] = v.a_subset;
        e["x_subset"] = v.x_subset;
        e["x_complement"] = v.x_complement;
        e["discrepancy"] = scalar_kind<S>::str(v.discrepancy);
        violations.append(e);
    }
    d["violations"] = violations;
    return d;
}

}  // namespace

PYBIND11_MODULE(rcbell, mod) {
    mod.doc() = "Bell-box causality toolkit: exact boxes, constraint regimes, LPs, quantum values";

    py::class_<Scenario>(mod, "Scenario")
        .def(py::init<std::vector<int>, std::vector<int>>(), py::arg("inputs"), py::arg("outputs"))
        .def_static("uniform", &Scenario::uniform, py::arg("parties"), py::arg("inputs"),
                    py::arg("outputs"))
        .def_property_readonly("parties", &Scenario::parties)
        .def_property_readonly("inputs", &Scenario::inputs)
        .def_property_readonly("outputs", &Scenario::outputs)
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

    py::class_<RationalBox>(mod, "RationalBox")
        .def_property_readonly("scenario", &RationalBox::scenario)
        .def("p",
             [](const RationalBox& b, const Tuple& a, const Tuple& x) {
                 return rational_to_string(b.p(a, x));
             })
        .def("p_float",
             [](const RationalBox& b, const Tuple& a, const Tuple& x) { return to_double(b.p(a, x)); })
        .def("validate", [](const RationalBox& b) { return b.validate().passes; })
        .def("correlator",
             [](const RationalBox& b, const Tuple& x) { return rational_to_string(b.correlator(x)); })
        .def("marginal",
             [](const RationalBox& b, const std::vector<int>& s, const Tuple& a, const Tuple& x,
                const Tuple& xc) { return rational_to_string(b.marginal(s, a, x, xc)); })
        .def("to_json", [](const RationalBox& b) { return box_to_json(b).dump(); });

    py::class_<FloatBox>(mod, "FloatBox")
        .def_property_readonly("scenario", &FloatBox::scenario)
        .def("p", [](const FloatBox& b, const Tuple& a, const Tuple& x) { return b.p(a, x); })
        .def("validate", [](const FloatBox& b) { return b.validate().passes; })
        .def("correlator", [](const FloatBox& b, const Tuple& x) { return b.correlator(x); })
        .def("to_json", [](const FloatBox& b) { return box_to_json(b).dump(); });

    mod.def("box_from_json", [](const std::string& text) -> py::object {
        const auto v = box_from_json(Json::parse(text));
        if (std::holds_alternative<RationalBox>(v)) return py::cast(std::get<RationalBox>(v));
        return py::cast(std::get<FloatBox>(v));
    });
    mod.def("rationalize", [](const FloatBox& b) { return rationalize_box(b); });

    // Constructions.
    mod.def("pr_box", &pr_box);
    mod.def("example_mermin_box", &example_mermin_box);
    mod.def("mermin_attack_box", &mermin_attack_box, py::arg("n"), py::arg("x_star"));
    mod.def("qkd_attack_box", &qkd_attack_box, py::arg("m"));
    mod.def("monogamy_box", &monogamy_box);
    mod.def("rcbl_svetlichny_box", &rcbl_svetlichny_box);

    // Constraint checks.
    mod.def(
        "check",
        [](const RationalBox& box, const std::string& kind, const std::vector<int>& order,
           const std::vector<std::vector<int>>& subsets) {
            return check_to_dict(check(box, regime_from_args(kind, order, subsets)));
        },
        py::arg("box"), py::arg("kind"), py::arg("order") = std::vector<int>{},
        py::arg("subsets") = std::vector<std::vector<int>>{});
    mod.def(
        "check_float",
        [](const FloatBox& box, const std::string& kind, const std::vector<int>& order,
           const std::vector<std::vector<int>>& subsets, double tol) {
            return check_to_dict(check(box, regime_from_args(kind, order, subsets), tol));
        },
        py::arg("box"), py::arg("kind"), py::arg("order") = std::vector<int>{},
        py::arg("subsets") = std::vector<std::vector<int>>{}, py::arg("tol") = 1e-9);

    // Inequalities.
    mod.def("inequalities", &functional_names);
    mod.def(
        "evaluate",
        [](const std::string& name, const RationalBox& box, int m) {
            const auto f = functional_by_name(name, m);
            if (!f) throw std::invalid_argument("unknown inequality: " + name);
            return rational_to_string(evaluate(*f, box));
        },
        py::arg("name"), py::arg("box"), py::arg("m") = 2);
    mod.def(
        "evaluate_float",
        [](const std::string& name, const FloatBox& box, int m) {
            const auto f = functional_by_name(name, m);
            if (!f) throw std::invalid_argument("unknown inequality: " + name);
            return evaluate(*f, box);
        },
        py::arg("name"), py::arg("box"), py::arg("m") = 2);
    mod.def(
        "mermin_satisfied",
        [](const FloatBox& box, double tol) { return mermin_satisfied(box, tol); }, py::arg("box"),
        py::arg("tol") = 1e-9);

    // Exact polytope optimization.
    mod.def(
        "lp_maximize",
        [](const std::string& name, const std::string& kind, const std::vector<int>& order,
           const std::vector<std::vector<int>>& subsets, int m) {
            const auto f = functional_by_name(name, m);
            if (!f) throw std::invalid_argument("unknown inequality: " + name);
            const auto opt = maximize_over_polytope(*f, regime_from_args(kind, order, subsets));
            return py::make_tuple(rational_to_string(opt.value), opt.witness);
        },
        py::arg("name"), py::arg("kind"), py::arg("order") = std::vector<int>{},
        py::arg("subsets") = std::vector<std::vector<int>>{}, py::arg("m") = 2);
    mod.def(
        "rcbl_maximize",
        [](const std::string& name, int m) {
            const auto f = functional_by_name(name, m);
            if (!f) throw std::invalid_argument("unknown inequality: " + name);
            const auto opt = rcbl_maximize(*f);
            py::dict d;
            d["value"] = rational_to_string(opt.value);
            d["family"] = opt.family;
            d["strategy"] = opt.strategy;
            d["witness"] = opt.witness;
            return d;
        },
        py::arg("name"), py::arg("m") = 2);
    mod.def(
        "bl_membership",
        [](const RationalBox& box) {
            const auto res = bl_membership(box);
            py::dict d;
            d["inside"] = res.inside;
            d["distance"] = rational_to_string(res.distance);
            d["distance_float"] = to_double(res.distance);
            return d;
        },
        py::arg("box"));

    // Geometry.
    py::class_<SpacetimeEvent>(mod, "SpacetimeEvent")
        .def(py::init([](double t, std::vector<double> r) {
                 return SpacetimeEvent{t, std::move(r)};
             }),
             py::arg("t"), py::arg("r"))
        .def_readonly("t", &SpacetimeEvent::t)
        .def_readonly("r", &SpacetimeEvent::r);
    mod.def(
        "is_spacelike",
        [](const SpacetimeEvent& a, const SpacetimeEvent& b, double c) { return is_spacelike(a, b, c); },
        py::arg("a"), py::arg("b"), py::arg("c") = 1.0);
    mod.def("phi_alpha", &phi_alpha);
    mod.def(
        "e_region_contains",
        [](const SpacetimeEvent& a, const SpacetimeEvent& b, const SpacetimeEvent& e, double u,
           double c) { return e_region_contains(a, b, e, InfluenceModel(u, c)); },
        py::arg("a"), py::arg("b"), py::arg("e"), py::arg("u"), py::arg("c") = 1.0);
    mod.def(
        "dual_signal_possible",
        [](const SpacetimeEvent& e, const SpacetimeEvent& a, const SpacetimeEvent& b, double u,
           double c) { return dual_signal_possible(e, a, b, InfluenceModel(u, c)); },
        py::arg("e"), py::arg("a"), py::arg("b"), py::arg("u"), py::arg("c") = 1.0);
    mod.def(
        "classify_three_party_1p1",
        [](const SpacetimeEvent& a, const SpacetimeEvent& b, const SpacetimeEvent& c_ev, double u,
           double c) {
            const auto regime = classify_three_party_1p1(a, b, c_ev, InfluenceModel(u, c));
            return regime.kind() == ConstraintRegime::Kind::full_ns ? "ns" : "rc";
        },
        py::arg("a"), py::arg("b"), py::arg("c_event"), py::arg("u"), py::arg("c") = 1.0);
    mod.def(
        "subset_escapes",
        [](const std::vector<SpacetimeEvent>& events, const std::vector<int>& subset, int excluded,
           double c) { return subset_escapes(events, subset, excluded, c); },
        py::arg("events"), py::arg("subset"), py::arg("excluded"), py::arg("c") = 1.0);

    // Quantum presets.
    mod.def("quantum_box", &quantum::preset_box, py::arg("name"), py::arg("n") = 3, py::arg("m") = 2);
    mod.def("chained_quantum_value", [](int m) {
        const auto v = quantum::chained_quantum_value(m);
        return py::make_tuple(v.direct, v.closed_form);
    });

    // Audit.
    mod.def(
        "ratio_identity_holds",
        [](const RationalBox& box) {
            return ratio_identity_check(box, InputPriors<Rational>::uniform(box.scenario())).holds;
        },
        py::arg("box"));
    mod.def(
        "input_posterior",
        [](const RationalBox& box, int party, const std::map<int, int>& inputs,
           const std::map<int, int>& outputs) {
            Observation obs{inputs, outputs};
            const auto post =
                input_posterior(box, InputPriors<Rational>::uniform(box.scenario()), party, obs);
            std::vector<std::string> out;
            for (const auto& v : post) out.push_back(rational_to_string(v));
            return out;
        },
        py::arg("box"), py::arg("party"), py::arg("inputs"), py::arg("outputs"));
}
