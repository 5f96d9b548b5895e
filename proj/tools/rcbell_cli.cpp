// Command-line front door: construct and check boxes, evaluate Bell
// expressions, classify measurement geometries, run exact polytope LPs, and
// produce the quantum reference boxes. Pipelines talk JSON over files or
// stdin/stdout. Exit codes: 0 success or pass, 1 a check failed, 2 usage or
// structural error.

#include <CLI11.hpp>

#include <functional>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rcbell/audit.hpp"
#include "rcbell/constructions.hpp"
#include "rcbell/geometry.hpp"
#include "rcbell/json_io.hpp"
#include "rcbell/polytope.hpp"
#include "rcbell/quantum.hpp"

namespace {

using namespace rcbell;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::string format = "text";
    double tol = 1e-9;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

std::vector<std::vector<int>> parse_subsets(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string group;
    while (std::getline(ss, group, ';'))
        if (!group.empty()) out.push_back(parse_int_list(group));
    return out;
}

Json read_json(const std::string& path) {
    try {
        if (path.empty() || path == "-") return Json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw FormatError("cannot open " + path);
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("json parse error: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << payload;
}

BoxVariant load_box(const std::string& path) { return box_from_json(read_json(path)); }

ConstraintRegime regime_from_flags(const std::string& name, const std::string& order,
                                   const std::string& subsets, int parties) {
    if (name == "ns") return ConstraintRegime::full_ns();
    if (name == "rc-line") {
        std::vector<int> ord = parse_int_list(order);
        if (ord.empty()) {
            ord.resize(parties);
            for (int i = 0; i < parties; ++i) ord[i] = i;
        }
        return ConstraintRegime::line_rc(std::move(ord));
    }
    if (name == "custom") {
        if (subsets.empty()) throw FormatError("custom regime requires --subsets");
        return ConstraintRegime::custom(parse_subsets(subsets));
    }
    throw FormatError("unknown regime: " + name);
}

BellFunctional functional_from_flags(const std::string& name, int m) {
    auto f = functional_by_name(name, m);
    if (!f) throw FormatError("unknown inequality: " + name);
    return *f;
}

int cmd_box_construct(const GlobalOptions&, const std::string& name, int n, const std::string& target,
                      int m, const std::string& out) {
    std::optional<RationalBox> box;
    if (name == "pr") box = pr_box();
    if (name == "example-mermin") box = example_mermin_box();
    if (name == "monogamy") box = monogamy_box();
    if (name == "rcbl-svetlichny") box = rcbl_svetlichny_box();
    if (name == "qkd-attack") box = qkd_attack_box(m);
    if (name == "mermin-attack") {
        Tuple x_star;
        for (char c : target) {
            if (c != '0' && c != '1') throw FormatError("--target must be a bit string");
            x_star.push_back(c - '0');
        }
        if (x_star.empty()) throw FormatError("mermin-attack requires --target");
        if (n == 0) n = static_cast<int>(x_star.size());
        box = mermin_attack_box(n, x_star);
    }
    if (!box) throw FormatError("unknown box construction: " + name);
    write_output(out, box_to_json(*box).dump(2));
    return kExitPass;
}

int cmd_box_eval(const GlobalOptions& g, const std::string& ineq, int m, const std::string& box_path) {
    const BellFunctional f = functional_from_flags(ineq, m);
    const BoxVariant box = load_box(box_path);
    std::string value;
    std::visit(
        [&](const auto& b) {
            if (f.requires_full_ns && !check(b, ConstraintRegime::full_ns(), g.tol).passes)
                std::cerr << "warning: box violates full no-signaling; single-party marginal terms "
                             "use the pinned-input convention\n";
            using S = typename std::decay_t<decltype(b)>::value_type;
            if constexpr (scalar_kind<S>::exact)
                value = rational_to_string(evaluate(f, b));
            else
                value = format_double(evaluate(f, b));
        },
        box);
    if (g.format == "json") {
        Json j;
        j["inequality"] = f.name;
        j["value"] = value;
        write_output("", j.dump(2));
    } else {
        write_output("", value);
    }
    return kExitPass;
}

template <class S>
int report_check(const GlobalOptions& g, const Box<S>& box, const ConstraintRegime& regime) {
    const auto validation = box.validate();
    if (!validation.passes) {
        if (g.format == "json")
            write_output("", validation_report_to_json(validation).dump(2));
        else
            write_output("", "INVALID: box fails validation");
        return kExitFail;
    }
    const auto rep = check(box, regime, g.tol);
    if (g.format == "json") {
        write_output("", check_report_to_json(rep).dump(2));
    } else if (g.format == "csv") {
        std::string out = csv_row({"subset", "a_subset", "x_subset", "x_complement", "x_reference",
                                   "discrepancy"});
        auto join = [](const std::vector<int>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
            return s;
        };
        for (const auto& v : rep.violations)
            out += csv_row({join(v.subset), join(v.a_subset), join(v.x_subset), join(v.x_complement),
                            join(v.x_complement_ref), scalar_kind<S>::str(v.discrepancy)});
        write_output("", out);
    } else {
        std::ostringstream os;
        if (rep.passes)
            os << "PASS";
        else
            os << "FAIL (" << rep.violations.size() << " violations)";
        write_output("", os.str());
    }
    return rep.passes ? kExitPass : kExitFail;
}

int cmd_box_check(const GlobalOptions& g, const std::string& regime_name, const std::string& order,
                  const std::string& subsets, const std::string& box_path) {
    const BoxVariant box = load_box(box_path);
    const int parties = std::visit([](const auto& b) { return b.scenario().parties(); }, box);
    const ConstraintRegime regime = regime_from_flags(regime_name, order, subsets, parties);
    return std::visit([&](const auto& b) { return report_check(g, b, regime); }, box);
}

int cmd_box_marginal(const GlobalOptions& g, const std::string& subset, const std::string& outputs,
                     const std::string& inputs, const std::string& comp_inputs,
                     const std::string& box_path) {
    const BoxVariant box = load_box(box_path);
    const auto s = parse_int_list(subset);
    const auto a = parse_int_list(outputs);
    const auto x = parse_int_list(inputs);
    const auto xc = parse_int_list(comp_inputs);
    std::string value;
    std::visit(
        [&](const auto& b) {
            using S = typename std::decay_t<decltype(b)>::value_type;
            const auto v = b.marginal(s, a, x, xc);
            if constexpr (scalar_kind<S>::exact)
                value = rational_to_string(v);
            else
                value = format_double(v);
        },
        box);
    (void)g;
    write_output("", value);
    return kExitPass;
}

int cmd_ineq_list(const GlobalOptions& g) {
    if (g.format == "json") {
        Json j = Json::array();
        for (const auto& name : functional_names()) {
            const auto f = functional_by_name(name, 2);
            Json e;
            e["name"] = name;
            for (const auto& [k, v] : f->bounds) e["bounds"][k] = rational_to_string(v);
            for (const auto& [k, v] : f->approx_bounds) e["approx_bounds"][k] = v;
            j.push_back(std::move(e));
        }
        write_output("", j.dump(2));
    } else {
        std::string out;
        for (const auto& name : functional_names()) out += name + "\n";
        write_output("", out);
    }
    return kExitPass;
}

int cmd_geometry_classify(const GlobalOptions& g, const std::string& events_path, double u, double c) {
    const auto events = events_from_json(read_json(events_path));
    if (events.size() != 3) throw FormatError("classify expects exactly three events");
    const auto regime = classify_three_party_1p1(events[0], events[1], events[2], InfluenceModel(u, c));
    if (g.format == "json")
        write_output("", regime_to_json(regime).dump(2));
    else
        write_output("", regime.kind() == ConstraintRegime::Kind::full_ns
                             ? "full no-signaling required"
                             : "contiguous family {A},{B},{C},{AB},{BC} sufficient");
    return kExitPass;
}

SpacetimeEvent parse_event(const std::string& s) {
    std::stringstream ss(s);
    std::string item;
    std::vector<double> nums;
    while (std::getline(ss, item, ',')) nums.push_back(std::stod(item));
    if (nums.size() < 2 || nums.size() > 4) throw FormatError("event must be t,r1[,r2[,r3]]");
    SpacetimeEvent e;
    e.t = nums[0];
    e.r.assign(nums.begin() + 1, nums.end());
    return e;
}

int cmd_geometry_region(const GlobalOptions& g, const std::string& sa, const std::string& sb,
                        const std::string& se, double u, double c) {
    const InfluenceModel model(u, c);
    const auto a = parse_event(sa), b = parse_event(sb), e = parse_event(se);
    const bool inside = e_region_contains(a, b, e, model);
    if (g.format == "json") {
        Json j;
        j["contains"] = inside;
        j["phi_alpha"] = phi_alpha(model.alpha());
        write_output("", j.dump(2));
    } else {
        write_output("", inside ? "inside" : "outside");
    }
    return kExitPass;
}

int cmd_geometry_escape(const GlobalOptions& g, const std::string& events_path, const std::string& subset,
                        int exclude, double c) {
    const auto events = events_from_json(read_json(events_path));
    const bool escapes = subset_escapes(events, parse_int_list(subset), exclude, c);
    if (g.format == "json") {
        Json j;
        j["escapes"] = escapes;
        write_output("", j.dump(2));
    } else {
        write_output("", escapes ? "true" : "false");
    }
    return kExitPass;
}

int cmd_lp_maximize(const GlobalOptions& g, const std::string& ineq, int m, const std::string& regime_name,
                    const std::string& order, const std::string& subsets, bool minimize,
                    const std::string& out) {
    const BellFunctional f = functional_from_flags(ineq, m);
    if (regime_name == "rcbl") {
        if (minimize) throw FormatError("rcbl supports maximization only");
        const auto opt = rcbl_maximize(f);
        if (!out.empty()) write_output(out, rcbl_witness_to_json(opt).dump(2));
        if (g.format == "json" && out.empty())
            write_output("", rcbl_witness_to_json(opt).dump(2));
        else
            write_output("", rational_to_string(opt.value));
        return kExitPass;
    }
    const ConstraintRegime regime = regime_from_flags(regime_name, order, subsets, f.scenario.parties());
    const auto opt = minimize ? minimize_over_polytope(f, regime) : maximize_over_polytope(f, regime);
    if (!out.empty()) write_output(out, lp_witness_to_json(opt).dump(2));
    if (g.format == "json" && out.empty())
        write_output("", lp_witness_to_json(opt).dump(2));
    else
        write_output("", rational_to_string(opt.value));
    return kExitPass;
}

int cmd_lp_member(const GlobalOptions& g, const std::string& set, const std::string& box_path,
                  double tol, const std::string& out) {
    if (set != "bl") throw FormatError("supported membership set: bl");
    const BoxVariant box = load_box(box_path);
    const BlMembership res = std::visit(
        [&](const auto& b) {
            using S = typename std::decay_t<decltype(b)>::value_type;
            if constexpr (scalar_kind<S>::exact)
                return bl_membership(b, Rational(0));
            else
                return bl_membership(b, tol);
        },
        box);
    if (!out.empty()) write_output(out, bl_membership_to_json(res).dump(2));
    if (g.format == "json" && out.empty()) {
        write_output("", bl_membership_to_json(res).dump(2));
    } else {
        write_output("", std::string(res.inside ? "inside" : "outside") +
                             " distance=" + rational_to_string(res.distance));
    }
    return res.inside ? kExitPass : kExitFail;
}

int cmd_quantum_box(const GlobalOptions&, const std::string& preset, int n, int m,
                    const std::string& out) {
    const FloatBox box = quantum::preset_box(preset, n, m);
    write_output(out, box_to_json(box).dump(2));
    return kExitPass;
}

int cmd_quantum_value(const GlobalOptions& g, const std::string& preset, int n, int m) {
    Json j;
    std::string text;
    if (preset == "chained") {
        const auto v = quantum::chained_quantum_value(m);
        j["direct"] = v.direct;
        j["closed_form"] = v.closed_form;
        text = "direct=" + format_double(v.direct) + " closed_form=" + format_double(v.closed_form);
    } else if (preset == "rcbl") {
        const double v = evaluate(rcbl_functional(), quantum::preset_box("rcbl"));
        j["value"] = v;
        text = format_double(v);
    } else if (preset == "mermin") {
        const FloatBox box = quantum::preset_box("mermin", n);
        const auto cs = mermin_constraints(n);
        double worst = 0.0;
        for (const auto& [x, sign] : cs.required)
            worst = std::max(worst, std::abs(box.correlator(x) - sign));
        j["max_deviation"] = worst;
        j["satisfied"] = worst <= g.tol;
        text = "max_deviation=" + format_double(worst);
    } else {
        throw FormatError("unknown quantum preset: " + preset);
    }
    write_output("", g.format == "json" ? j.dump(2) : text);
    return kExitPass;
}

int cmd_audit_ratio(const GlobalOptions& g, const std::string& box_path, const std::string& priors_kind) {
    if (priors_kind != "uniform") throw FormatError("supported priors: uniform");
    const BoxVariant box = load_box(box_path);
    bool holds = true;
    Json cells = Json::array();
    std::size_t checked = 0, skipped = 0;
    std::visit(
        [&](const auto& b) {
            using S = typename std::decay_t<decltype(b)>::value_type;
            const auto priors = InputPriors<S>::uniform(b.scenario());
            const auto rep = ratio_identity_check(b, priors, g.tol);
            holds = rep.holds;
            checked = rep.checked;
            skipped = rep.skipped;
            for (const auto& cell : rep.cells) {
                Json e;
                e["x"] = cell.x;
                e["y"] = cell.y;
                e["z"] = cell.z;
                e["a"] = cell.a;
                e["c"] = cell.c;
                e["ratio"] = scalar_kind<S>::str(cell.ratio);
                cells.push_back(std::move(e));
            }
        },
        box);
    if (g.format == "json") {
        Json j;
        j["holds"] = holds;
        j["checked"] = checked;
        j["skipped"] = skipped;
        j["cells"] = std::move(cells);
        write_output("", j.dump(2));
    } else {
        std::ostringstream os;
        os << (holds ? "HOLDS" : "FAILS") << " checked=" << checked << " skipped=" << skipped;
        write_output("", os.str());
    }
    return holds ? kExitPass : kExitFail;
}

template <class S>
CommonCauseDecomposition<S> decomposition_from_json(const Json& j, const Scenario& pair_scen) {
    CommonCauseDecomposition<S> d;
    for (const auto& w : j.at("weights")) {
        if constexpr (scalar_kind<S>::exact)
            d.weights.push_back(w.is_string() ? rational_from_string(w.get<std::string>())
                                              : Rational(w.get<long long>()));
        else
            d.weights.push_back(w.get<double>());
    }
    for (const auto& comp : j.at("components")) {
        auto loaded = box_from_json(comp);
        if (!std::holds_alternative<Box<S>>(loaded))
            throw FormatError("screening: component scalar kind mismatch");
        auto b = std::get<Box<S>>(loaded);
        if (b.scenario() != pair_scen) throw FormatError("screening: component scenario mismatch");
        d.components.push_back(std::move(b));
    }
    return d;
}

int cmd_audit_screening(const GlobalOptions& g, const std::string& box_path, const std::string& decomp_path,
                        const std::string& pair, int spectator) {
    const BoxVariant box = load_box(box_path);
    const Json decomp_json = read_json(decomp_path);
    const auto pair_list = parse_int_list(pair);
    if (pair_list.size() != 2) throw FormatError("--pair must name two parties");
    bool passes = false;
    Json failures = Json::array();
    std::visit(
        [&](const auto& b) {
            using S = typename std::decay_t<decltype(b)>::value_type;
            const Scenario pair_scen({b.scenario().inputs_of(pair_list[0]),
                                      b.scenario().inputs_of(pair_list[1])},
                                     {b.scenario().outputs_of(pair_list[0]),
                                      b.scenario().outputs_of(pair_list[1])});
            std::map<int, CommonCauseDecomposition<S>> per_y;
            for (const auto& entry : decomp_json.at("per_y"))
                per_y.emplace(entry.at("y").get<int>(),
                              decomposition_from_json<S>(entry, pair_scen));
            const auto rep = screening_check(b, pair_list[0], spectator, pair_list[1], per_y, g.tol);
            passes = rep.passes();
            for (const auto& f : rep.failures) failures.push_back(f);
        },
        box);
    if (g.format == "json") {
        Json j;
        j["passes"] = passes;
        j["failures"] = std::move(failures);
        write_output("", j.dump(2));
    } else {
        write_output("", passes ? "PASS" : "FAIL");
    }
    return passes ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-box causality toolkit"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--format", g.format, "Output format: text|json|csv")->capture_default_str();
    app.add_option("--tol", g.tol, "Float-kind comparison tolerance")->capture_default_str();

    // box
    auto* box = app.add_subcommand("box", "Construct, evaluate and check boxes");
    box->require_subcommand(1);
    std::string name, target, out, box_path, ineq = "chsh", regime_name = "ns", order, subsets;
    std::string subset, outputs, inputs, comp_inputs;
    int n = 0, m = 2;

    auto* construct = box->add_subcommand("construct", "Build a named box");
    construct->add_option("--name", name, "pr|example-mermin|mermin-attack|qkd-attack|monogamy|rcbl-svetlichny")
        ->required();
    construct->add_option("--n", n, "Party count (mermin-attack)");
    construct->add_option("--target", target, "Designated input bit string (mermin-attack)");
    construct->add_option("--m", m, "Inputs per party (qkd-attack)");
    construct->add_option("--out", out, "Output file (default stdout)");

    auto* beval = box->add_subcommand("eval", "Evaluate an inequality on a box");
    beval->add_option("--ineq", ineq, "Inequality name")->required();
    beval->add_option("--m", m, "Chain length (chained)");
    beval->add_option("--box", box_path, "Box JSON file (default stdin)");

    auto* bcheck = box->add_subcommand("check", "Check a constraint regime");
    bcheck->add_option("--regime", regime_name, "ns|rc-line|custom")->required();
    bcheck->add_option("--order", order, "Line order, e.g. 0,1,2");
    bcheck->add_option("--subsets", subsets, "Custom subsets, e.g. 0;1;2;0,1;1,2");
    bcheck->add_option("--box", box_path, "Box JSON file (default stdin)");

    auto* bmarg = box->add_subcommand("marginal", "Marginal probability of a party subset");
    bmarg->add_option("--subset", subset, "Party subset, e.g. 0,1")->required();
    bmarg->add_option("--outputs", outputs, "Subset outputs")->required();
    bmarg->add_option("--inputs", inputs, "Subset inputs")->required();
    bmarg->add_option("--complement-inputs", comp_inputs, "Complement inputs");
    bmarg->add_option("--box", box_path, "Box JSON file (default stdin)");

    // ineq
    auto* ineq_cmd = app.add_subcommand("ineq", "Inequality catalogue");
    ineq_cmd->require_subcommand(1);
    auto* ilist = ineq_cmd->add_subcommand("list", "List shipped inequalities");
    auto* ieval = ineq_cmd->add_subcommand("eval", "Evaluate an inequality on a box");
    std::string ineq_name;
    ieval->add_option("--name", ineq_name, "Inequality name")->required();
    ieval->add_option("--m", m, "Chain length (chained)");
    ieval->add_option("--box", box_path, "Box JSON file (default stdin)");

    // geometry
    auto* geo = app.add_subcommand("geometry", "Spacetime configuration tools");
    geo->require_subcommand(1);
    std::string events_path, ev_a, ev_b, ev_e;
    double u = 2.0, light = 1.0;
    int exclude = 0;
    auto* classify = geo->add_subcommand("classify", "Classify a three-event line configuration");
    classify->add_option("--events", events_path, "Events JSON file")->required();
    classify->add_option("--u", u, "Influence speed (multiples of c)");
    classify->add_option("--c", light, "Light speed");
    auto* region = geo->add_subcommand("region", "Influence-region membership for E against A, B");
    region->add_option("--a", ev_a, "Event t,r...")->required();
    region->add_option("--b", ev_b, "Event t,r...")->required();
    region->add_option("--e", ev_e, "Event t,r...")->required();
    region->add_option("--u", u, "Influence speed");
    region->add_option("--c", light, "Light speed");
    auto* escape = geo->add_subcommand("escape", "Future-cone escape test");
    escape->add_option("--events", events_path, "Events JSON file")->required();
    escape->add_option("--subset", subset, "Cone-owning subset, e.g. 0,1,2")->required();
    escape->add_option("--exclude", exclude, "Remaining party index")->required();
    escape->add_option("--c", light, "Light speed");

    // lp
    auto* lp = app.add_subcommand("lp", "Exact polytope optimization");
    lp->require_subcommand(1);
    bool minimize = false;
    double member_tol = 1e-6;
    std::string member_set = "bl";
    auto* lmax = lp->add_subcommand("maximize", "Optimize an inequality over a regime polytope");
    lmax->add_option("--ineq", ineq, "Inequality name")->required();
    lmax->add_option("--m", m, "Chain length (chained)");
    lmax->add_option("--regime,--set", regime_name, "ns|rc-line|custom|rcbl")->required();
    lmax->add_option("--order", order, "Line order");
    lmax->add_option("--subsets", subsets, "Custom subsets");
    lmax->add_flag("--minimize", minimize, "Minimize instead of maximize");
    lmax->add_option("--out", out, "Witness JSON file");
    auto* lmember = lp->add_subcommand("member", "Membership distance to a decomposition hull");
    lmember->add_option("--set", member_set, "Membership set (bl)")->required();
    lmember->add_option("--box", box_path, "Box JSON file (default stdin)");
    lmember->add_option("--tol", member_tol, "Inside tolerance for float boxes");
    lmember->add_option("--out", out, "Result JSON file");

    // quantum
    auto* quantum_cmd = app.add_subcommand("quantum", "Quantum reference boxes and values");
    quantum_cmd->require_subcommand(1);
    std::string preset = "rcbl";
    int qn = 3;
    auto* qbox = quantum_cmd->add_subcommand("box", "Emit a preset box");
    qbox->add_option("--preset", preset, "mermin|chained|rcbl")->required();
    qbox->add_option("--n", qn, "Parties (mermin)");
    qbox->add_option("--m", m, "Chain length (chained)");
    qbox->add_option("--out", out, "Output file (default stdout)");
    auto* qvalue = quantum_cmd->add_subcommand("value", "Evaluate a preset's headline value");
    qvalue->add_option("--preset", preset, "mermin|chained|rcbl")->required();
    qvalue->add_option("--n", qn, "Parties (mermin)");
    qvalue->add_option("--m", m, "Chain length (chained)");

    // audit
    auto* audit = app.add_subcommand("audit", "Free-choice and common-cause audits");
    audit->require_subcommand(1);
    std::string priors_kind = "uniform", decomp_path, pair = "0,2";
    int spectator = 1;
    auto* ratio = audit->add_subcommand("ratio", "Bayes ratio identity over a 3-party box");
    ratio->add_option("--box", box_path, "Box JSON file (default stdin)");
    ratio->add_option("--priors", priors_kind, "Input priors (uniform)");
    auto* screening = audit->add_subcommand("screening", "Verify a common-cause decomposition");
    screening->add_option("--box", box_path, "Box JSON file (default stdin)");
    screening->add_option("--decomp", decomp_path, "Decomposition JSON file")->required();
    screening->add_option("--pair", pair, "Screened pair, e.g. 0,2");
    screening->add_option("--spectator", spectator, "Spectator party");

    // Let global flags (--format, --tol) appear after subcommand names too.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        for (CLI::App* sub : cmd->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_box_construct(g, name, n, target, m, out);
        if (beval->parsed()) return cmd_box_eval(g, ineq, m, box_path);
        if (bcheck->parsed()) return cmd_box_check(g, regime_name, order, subsets, box_path);
        if (bmarg->parsed()) return cmd_box_marginal(g, subset, outputs, inputs, comp_inputs, box_path);
        if (ilist->parsed()) return cmd_ineq_list(g);
        if (ieval->parsed()) return cmd_box_eval(g, ineq_name, m, box_path);
        if (classify->parsed()) return cmd_geometry_classify(g, events_path, u, light);
        if (region->parsed()) return cmd_geometry_region(g, ev_a, ev_b, ev_e, u, light);
        if (escape->parsed()) return cmd_geometry_escape(g, events_path, subset, exclude, light);
        if (lmax->parsed())
            return cmd_lp_maximize(g, ineq, m, regime_name, order, subsets, minimize, out);
        if (lmember->parsed()) return cmd_lp_member(g, member_set, box_path, member_tol, out);
        if (qbox->parsed()) return cmd_quantum_box(g, preset, qn, m, out);
        if (qvalue->parsed()) return cmd_quantum_value(g, preset, qn, m);
        if (ratio->parsed()) return cmd_audit_ratio(g, box_path, priors_kind);
        if (screening->parsed())
            return cmd_audit_screening(g, box_path, decomp_path, pair, spectator);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitUsage;
    }
}
