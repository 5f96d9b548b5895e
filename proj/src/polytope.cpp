#include "rcbell/polytope.hpp"

#include <array>
#include <map>
#include <numeric>

namespace rcbell {

namespace {

// Adds the marginal-equality rows of one protected subset.
void add_subset_rows(LinearProgram& lp, const Scenario& scen, const std::vector<int>& subset) {
    const std::vector<int> comp = complement_of(subset, scen.parties());
    if (comp.empty()) return;
    std::vector<int> in_s, out_s, in_c, out_c;
    for (int p : subset) {
        in_s.push_back(scen.inputs_of(p));
        out_s.push_back(scen.outputs_of(p));
    }
    for (int p : comp) {
        in_c.push_back(scen.inputs_of(p));
        out_c.push_back(scen.outputs_of(p));
    }
    const std::size_t na = scen.output_count();
    const int n = scen.parties();

    Tuple x_s(subset.size(), 0);
    do {
        Tuple x_c(comp.size(), 0);
        while (next_tuple(x_c, in_c)) {
            Tuple a_s(subset.size(), 0);
            do {
                std::vector<Rational> row(lp.num_vars, Rational(0));
                for (int side = 0; side < 2; ++side) {
                    // side 0: coefficients +1 at x_c; side 1: -1 at the reference.
                    Tuple x(n, 0);
                    for (std::size_t i = 0; i < subset.size(); ++i) x[subset[i]] = x_s[i];
                    if (side == 0)
                        for (std::size_t i = 0; i < comp.size(); ++i) x[comp[i]] = x_c[i];
                    const std::size_t xi = scen.input_index(x);
                    Tuple a(n, 0);
                    for (std::size_t i = 0; i < subset.size(); ++i) a[subset[i]] = a_s[i];
                    Tuple a_c(comp.size(), 0);
                    do {
                        for (std::size_t i = 0; i < comp.size(); ++i) a[comp[i]] = a_c[i];
                        row[xi * na + scen.output_index(a)] += side == 0 ? 1 : -1;
                    } while (next_tuple(a_c, out_c));
                }
                lp.add_row(std::move(row), Rational(0));
            } while (next_tuple(a_s, out_s));
        }
    } while (next_tuple(x_s, in_s));
}

}  // namespace

LinearProgram polytope_lp(const Scenario& scen, const ConstraintRegime& regime,
                          const std::vector<Rational>& objective) {
    if (objective.size() != scen.table_size()) throw std::invalid_argument("polytope lp: objective size");
    LinearProgram lp;
    lp.num_vars = scen.table_size();
    lp.objective = objective;
    const std::size_t na = scen.output_count();
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi) {
        std::vector<Rational> row(lp.num_vars, Rational(0));
        for (std::size_t ai = 0; ai < na; ++ai) row[xi * na + ai] = 1;
        lp.add_row(std::move(row), Rational(1));
    }
    for (const MarginalConstraint& c : regime.protected_subsets(scen)) add_subset_rows(lp, scen, c.subset);
    return lp;
}

PolytopeOptimum maximize_over_polytope(const BellFunctional& f, const ConstraintRegime& regime) {
    LinearProgram lp = polytope_lp(f.scenario, regime, f.coeffs);
    LPSolution sol = solve_lp(lp);
    if (sol.status != LPStatus::optimal)
        throw std::logic_error("polytope maximize: regime polytope must be bounded and non-empty");
    RationalBox witness(f.scenario, sol.optimizer);
    if (!witness.validate().passes || !check(witness, regime).passes)
        throw std::logic_error("polytope maximize: witness fails its own regime");
    return {sol.value, std::move(witness), std::move(sol)};
}

PolytopeOptimum minimize_over_polytope(const BellFunctional& f, const ConstraintRegime& regime) {
    BellFunctional neg = f;
    for (auto& c : neg.coeffs) c = -c;
    PolytopeOptimum opt = maximize_over_polytope(neg, regime);
    // opt.lp keeps the negated problem's certificates; only the value flips.
    opt.value = -opt.value;
    return opt;
}

namespace {

// Deterministic response: one output bit per input, encoded bitwise.
int response(int strategy_index, int input) { return (strategy_index >> input) & 1; }

struct FamilySpec {
    const char* name;
    int lone_party;           // party played deterministically
    std::array<int, 2> pair;  // joined parties, ascending
};

struct FamilyBest {
    Rational value;
    int strategy = 0;
    std::vector<Rational> component;
};

// Best (strategy, component) for one family. `component_objective` maps a
// lone-party strategy to the LP objective over the component scenario.
template <class MakeObjective>
FamilyBest best_over_strategies(const Scenario& comp_scen, const ConstraintRegime& regime,
                                MakeObjective make_objective) {
    FamilyBest best;
    bool first = true;
    for (int strat = 0; strat < 4; ++strat) {
        LPSolution sol = solve_lp(polytope_lp(comp_scen, regime, make_objective(strat)));
        if (sol.status != LPStatus::optimal) throw std::logic_error("rcbl: component LP must be optimal");
        if (first || sol.value > best.value) {
            first = false;
            best.value = sol.value;
            best.strategy = strat;
            best.component = std::move(sol.optimizer);
        }
    }
    return best;
}

RcblOptimum finish_pair_family(const BellFunctional& f, const FamilySpec& fam, const Scenario& comp_scen,
                               FamilyBest best) {
    RationalBox component(comp_scen, std::move(best.component));
    RationalBox witness(f.scenario);
    const std::size_t na3 = f.scenario.output_count();
    for (std::size_t xi = 0; xi < f.scenario.input_count(); ++xi) {
        const Tuple x = f.scenario.input_tuple(xi);
        for (std::size_t ai = 0; ai < na3; ++ai) {
            const Tuple a = f.scenario.output_tuple(ai);
            if (a[fam.lone_party] != response(best.strategy, x[fam.lone_party])) continue;
            const Tuple xp{x[fam.pair[0]], x[fam.pair[1]]};
            const Tuple ap{a[fam.pair[0]], a[fam.pair[1]]};
            witness.at(xi, ai) = component.p(ap, xp);
        }
    }
    return {best.value,
            fam.name,
            {response(best.strategy, 0), response(best.strategy, 1)},
            std::move(component),
            std::move(witness)};
}

RcblOptimum maximize_family_pair_ns(const BellFunctional& f, const FamilySpec& fam) {
    const Scenario pair_scen = Scenario::uniform(2, 2, 2);
    const std::size_t na3 = f.scenario.output_count();
    auto make_objective = [&](int strat) {
        std::vector<Rational> obj(pair_scen.table_size(), Rational(0));
        for (std::size_t xi = 0; xi < f.scenario.input_count(); ++xi) {
            const Tuple x = f.scenario.input_tuple(xi);
            for (std::size_t ai = 0; ai < na3; ++ai) {
                if (f.coeffs[xi * na3 + ai] == 0) continue;
                const Tuple a = f.scenario.output_tuple(ai);
                if (a[fam.lone_party] != response(strat, x[fam.lone_party])) continue;
                const Tuple xp{x[fam.pair[0]], x[fam.pair[1]]};
                const Tuple ap{a[fam.pair[0]], a[fam.pair[1]]};
                obj[pair_scen.flat_index(xp, ap)] += f.coeffs[xi * na3 + ai];
            }
        }
        return obj;
    };
    FamilyBest best = best_over_strategies(pair_scen, ConstraintRegime::full_ns(), make_objective);
    return finish_pair_family(f, fam, pair_scen, std::move(best));
}

RcblOptimum maximize_family_ac_extended(const BellFunctional& f) {
    // AC component with B's input as a spectator coordinate: a 3-party
    // scenario (A, B', C) where B' has two inputs and one trivial output.
    // Protecting {A} and {C} keeps P(a|x) and P(c|z) input-independent while
    // the joint AC distribution may follow y.
    const Scenario ext_scen(std::vector<int>{2, 2, 2}, std::vector<int>{2, 1, 2});
    const auto regime = ConstraintRegime::custom({{0}, {2}});
    const std::size_t na3 = f.scenario.output_count();
    auto make_objective = [&](int strat) {
        std::vector<Rational> obj(ext_scen.table_size(), Rational(0));
        for (std::size_t xi = 0; xi < f.scenario.input_count(); ++xi) {
            const Tuple x = f.scenario.input_tuple(xi);
            for (std::size_t ai = 0; ai < na3; ++ai) {
                if (f.coeffs[xi * na3 + ai] == 0) continue;
                const Tuple a = f.scenario.output_tuple(ai);
                if (a[1] != response(strat, x[1])) continue;
                obj[ext_scen.flat_index({x[0], x[1], x[2]}, {a[0], 0, a[2]})] += f.coeffs[xi * na3 + ai];
            }
        }
        return obj;
    };
    FamilyBest best = best_over_strategies(ext_scen, regime, make_objective);
    RationalBox component(ext_scen, std::move(best.component));
    RationalBox witness(f.scenario);
    for (std::size_t xi = 0; xi < f.scenario.input_count(); ++xi) {
        const Tuple x = f.scenario.input_tuple(xi);
        for (std::size_t ai = 0; ai < na3; ++ai) {
            const Tuple a = f.scenario.output_tuple(ai);
            if (a[1] != response(best.strategy, x[1])) continue;
            witness.at(xi, ai) = component.p({a[0], 0, a[2]}, {x[0], x[1], x[2]});
        }
    }
    return {best.value,
            "AC|B",
            {response(best.strategy, 0), response(best.strategy, 1)},
            std::move(component),
            std::move(witness)};
}

}  // namespace

RcblOptimum rcbl_maximize(const BellFunctional& f) {
    if (f.scenario != Scenario::uniform(3, 2, 2))
        throw std::domain_error("rcbl maximize: requires the 3-party binary scenario");
    RcblOptimum best = maximize_family_pair_ns(f, {"AB|C", 2, {0, 1}});
    RcblOptimum bc = maximize_family_pair_ns(f, {"BC|A", 0, {1, 2}});
    if (bc.value > best.value) best = std::move(bc);
    RcblOptimum ac = maximize_family_ac_extended(f);
    if (ac.value > best.value) best = std::move(ac);
    if (evaluate(f, best.witness) != best.value)
        throw std::logic_error("rcbl maximize: witness value mismatch");
    return best;
}

namespace {

struct VertexSet {
    std::vector<std::vector<Rational>> tables;
    std::vector<std::string> labels;
};

// Bilocal product vertices: deterministic joint pair response (each output may
// depend on both of the pair's inputs) times a deterministic lone party.
VertexSet bl_vertices(const Scenario& scen) {
    VertexSet vs;
    std::map<std::vector<int>, std::size_t> seen;
    const std::size_t na = scen.output_count();
    const FamilySpec fams[3] = {{"AB|C", 2, {0, 1}}, {"AC|B", 1, {0, 2}}, {"BC|A", 0, {1, 2}}};
    for (const auto& fam : fams) {
        for (int fa = 0; fa < 16; ++fa)
            for (int fb = 0; fb < 16; ++fb)
                for (int h = 0; h < 4; ++h) {
                    std::vector<int> key(scen.table_size(), 0);
                    for (std::size_t xi = 0; xi < scen.input_count(); ++xi) {
                        const Tuple x = scen.input_tuple(xi);
                        const int pair_in = x[fam.pair[0]] * 2 + x[fam.pair[1]];
                        Tuple a(3, 0);
                        a[fam.pair[0]] = response(fa, pair_in);
                        a[fam.pair[1]] = response(fb, pair_in);
                        a[fam.lone_party] = response(h, x[fam.lone_party]);
                        key[xi * na + scen.output_index(a)] = 1;
                    }
                    if (seen.count(key)) continue;
                    seen.emplace(key, vs.tables.size());
                    std::vector<Rational> table(key.size());
                    for (std::size_t i = 0; i < key.size(); ++i) table[i] = key[i];
                    vs.tables.push_back(std::move(table));
                    vs.labels.push_back(std::string(fam.name) + " f" + std::to_string(fa) + " g" +
                                        std::to_string(fb) + " h" + std::to_string(h));
                }
    }
    return vs;
}

}  // namespace

BlMembership bl_membership(const RationalBox& box, const Rational& tolerance) {
    const Scenario& scen = box.scenario();
    if (scen != Scenario::uniform(3, 2, 2))
        throw std::domain_error("bl membership: requires the 3-party binary scenario");
    const VertexSet vs = bl_vertices(scen);
    const std::size_t nv = vs.tables.size(), cells = scen.table_size();

    // Restricted-master column generation over the vertex weights.
    // Master LP on an active vertex subset A:
    //   sum_{v in A} w_v V_vi - t + s_up_i           = p_i
    //   sum_{v in A} w_v V_vi + t           - s_lo_i = p_i
    //   sum_{v in A} w_v                             = 1
    // maximize -t. A vertex prices into the master when its dual column value
    // sum_i V_vi (y_up_i + y_lo_i) + y_norm drops below its cost 0; once no
    // vertex prices in, the restricted optimum is optimal for the full hull.
    auto vertex_deviation = [&](std::size_t v) {
        Rational worst(0);
        for (std::size_t i = 0; i < cells; ++i) {
            Rational d = vs.tables[v][i] - box.table()[i];
            if (d < 0) d = -d;
            if (d > worst) worst = d;
        }
        return worst;
    };
    std::vector<std::size_t> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
        return vertex_deviation(u) < vertex_deviation(v);
    });
    std::vector<std::size_t> active(order.begin(), order.begin() + std::min<std::size_t>(64, nv));
    std::vector<bool> in_active(nv, false);
    for (std::size_t v : active) in_active[v] = true;

    LPSolution sol;
    for (int round = 0;; ++round) {
        if (round > 200) throw std::logic_error("bl membership: column generation did not settle");
        LinearProgram lp;
        lp.num_vars = active.size() + 1 + 2 * cells;
        const std::size_t t_col = active.size();
        lp.objective.assign(lp.num_vars, Rational(0));
        lp.objective[t_col] = -1;
        for (std::size_t i = 0; i < cells; ++i) {
            std::vector<Rational> up(lp.num_vars, Rational(0)), lo(lp.num_vars, Rational(0));
            for (std::size_t k = 0; k < active.size(); ++k) {
                const Rational& coeff = vs.tables[active[k]][i];
                if (coeff == 0) continue;
                up[k] = coeff;
                lo[k] = coeff;
            }
            up[t_col] = -1;
            up[t_col + 1 + i] = 1;
            lo[t_col] = 1;
            lo[t_col + 1 + cells + i] = -1;
            lp.add_row(std::move(up), box.table()[i]);
            lp.add_row(std::move(lo), box.table()[i]);
        }
        std::vector<Rational> norm(lp.num_vars, Rational(0));
        for (std::size_t k = 0; k < active.size(); ++k) norm[k] = 1;
        lp.add_row(std::move(norm), Rational(1));

        sol = solve_lp(lp);
        if (sol.status != LPStatus::optimal) throw std::logic_error("bl membership: master must be optimal");

        // Price every inactive vertex against the verified dual.
        std::vector<std::pair<Rational, std::size_t>> violating;
        for (std::size_t v = 0; v < nv; ++v) {
            if (in_active[v]) continue;
            Rational value = sol.dual[2 * cells];
            for (std::size_t i = 0; i < cells; ++i)
                if (vs.tables[v][i] != 0)
                    value += vs.tables[v][i] * (sol.dual[2 * i] + sol.dual[2 * i + 1]);
            if (value < 0) violating.emplace_back(value, v);
        }
        if (violating.empty()) break;
        std::sort(violating.begin(), violating.end());
        const std::size_t take = std::min<std::size_t>(64, violating.size());
        for (std::size_t k = 0; k < take; ++k) {
            active.push_back(violating[k].second);
            in_active[violating[k].second] = true;
        }
    }

    RationalBox closest(scen);
    std::vector<std::pair<std::string, Rational>> weights;
    Rational weight_sum(0);
    for (std::size_t k = 0; k < active.size(); ++k) {
        const Rational& w = sol.optimizer[k];
        if (w == 0) continue;
        weights.emplace_back(vs.labels[active[k]], w);
        weight_sum += w;
        for (std::size_t i = 0; i < cells; ++i)
            if (vs.tables[active[k]][i] != 0)
                closest.at(i / scen.output_count(), i % scen.output_count()) += w * vs.tables[active[k]][i];
    }
    const Rational distance = -sol.value;
    // Full-problem certificate: the mixture is a distribution and its worst
    // cell deviation equals the reported distance exactly.
    if (weight_sum != 1) throw std::logic_error("bl membership: weights do not sum to one");
    Rational worst(0);
    for (std::size_t i = 0; i < cells; ++i) {
        Rational d = closest.table()[i] - box.table()[i];
        if (d < 0) d = -d;
        if (d > worst) worst = d;
    }
    if (worst != distance) throw std::logic_error("bl membership: deviation/distance mismatch");
    return {distance <= tolerance, distance, std::move(closest), std::move(weights)};
}

BlMembership bl_membership(const FloatBox& box, double tolerance) {
    BlMembership out = bl_membership(rationalize_box(box), Rational(0));
    out.inside = to_double(out.distance) <= tolerance;
    return out;
}

}  // namespace rcbell
