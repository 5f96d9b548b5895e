// Acceptance suite: runs every headline requirement end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "rcbell/audit.hpp"
#include "rcbell/constructions.hpp"
#include "rcbell/geometry.hpp"
#include "rcbell/polytope.hpp"
#include "rcbell/quantum.hpp"

using namespace rcbell;

namespace {

struct Criterion {
    std::string label;
    std::function<bool(std::string&)> run;
    double time_limit = 0.0;  // seconds; 0 = unbounded
};

bool approx(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// ---------------------------------------------------------------- criterion 1
bool ns_monogamy(std::string& detail) {
    const auto opt = maximize_over_polytope(chsh_monogamy_sum(), ConstraintRegime::full_ns());
    detail = "max = " + rational_to_string(opt.value);
    return opt.value == Rational(4);
}

// ---------------------------------------------------------------- criterion 2
bool rc_monogamy(std::string& detail) {
    const RationalBox box = monogamy_box();
    const auto regime = ConstraintRegime::line_rc({0, 1, 2});
    const bool passes = check(box, regime).passes;
    const Rational value = evaluate(chsh_monogamy_sum(), box);
    const auto opt = maximize_over_polytope(chsh_monogamy_sum(), regime);
    detail = "box value = " + rational_to_string(value) + ", lp max = " + rational_to_string(opt.value);
    return passes && value == Rational(8) && opt.value == Rational(8);
}

// ---------------------------------------------------------------- criterion 3
bool rcbl_bound(std::string& detail) {
    const auto opt = rcbl_maximize(rcbl_functional());
    detail = "max = " + rational_to_string(opt.value) + " via " + opt.family;
    return opt.value == Rational(6);
}

// ---------------------------------------------------------------- criterion 4
bool rcbl_quantum(std::string& detail) {
    const FloatBox box = quantum::preset_box("rcbl");
    const double value = evaluate(rcbl_functional(), box);
    const double sve = evaluate(svetlichny(), box);
    const auto membership = bl_membership(box, 1e-4);
    const double distance = to_double(membership.distance);
    std::ostringstream os;
    os << "value = " << value << ", svetlichny = " << sve << ", hull distance = " << distance;
    detail = os.str();
    return approx(value, 2.0 * (1.0 + 2.0 * std::sqrt(2.0)), 1e-9) && approx(sve, 0.0, 1e-9) &&
           distance <= 1e-4;
}

// ---------------------------------------------------------------- criterion 5
bool randomness_attack(std::string& detail) {
    int built = 0;
    for (int n : {3, 5, 7}) {
        const Scenario scen = Scenario::uniform(n, 2, 2);
        std::vector<int> line(n);
        for (int i = 0; i < n; ++i) line[i] = i;
        const auto regime = ConstraintRegime::line_rc(line);
        Tuple x_star(n, 0);
        const std::vector<int> radices(n, 2);
        do {
            int weight = 0;
            for (int b : x_star) weight += b;
            if (weight % 2 == 0) continue;
            const RationalBox box = mermin_attack_box(n, x_star);
            // Deterministic designated output.
            const int k = (n - weight) / 2;
            Tuple a_star(n, 0);
            if (k % 2 == 1) a_star[0] = 1;
            if (box.p(a_star, x_star) != Rational(1)) {
                detail = "missing deterministic point at n=" + std::to_string(n);
                return false;
            }
            if (!mermin_satisfied(box, 0.0)) {
                detail = "Mermin constraints broken at n=" + std::to_string(n);
                return false;
            }
            if (!check(box, regime).passes) {
                detail = "line constraints broken at n=" + std::to_string(n);
                return false;
            }
            ++built;
        } while (next_tuple(x_star, radices));
    }
    detail = std::to_string(built) + " boxes built and verified";
    return built == 4 + 16 + 64;
}

// ---------------------------------------------------------------- criterion 6
bool chained_values(std::string& detail) {
    for (int m = 2; m <= 8; ++m) {
        const auto v = quantum::chained_quantum_value(m);
        if (!approx(v.direct, v.closed_form, 1e-9)) {
            detail = "quantum value mismatch at m=" + std::to_string(m);
            return false;
        }
        // Exhaustive classical minimum over all deterministic strategies.
        const BellFunctional f = chained(m);
        Rational best;
        bool first = true;
        for (int fa = 0; fa < (1 << m); ++fa)
            for (int gb = 0; gb < (1 << m); ++gb) {
                std::vector<int> ra(m), rb(m);
                for (int i = 0; i < m; ++i) {
                    ra[i] = (fa >> i) & 1;
                    rb[i] = (gb >> i) & 1;
                }
                const auto box = from_deterministic(
                    f.scenario, DeterministicStrategy::local({ra, rb}));
                const Rational value = evaluate(f, box);
                if (first || value < best) {
                    best = value;
                    first = false;
                }
            }
        if (best != Rational(1)) {
            detail = "classical minimum " + rational_to_string(best) + " at m=" + std::to_string(m);
            return false;
        }
        const auto opt = minimize_over_polytope(f, ConstraintRegime::full_ns());
        if (opt.value != Rational(0)) {
            detail = "NS minimum " + rational_to_string(opt.value) + " at m=" + std::to_string(m);
            return false;
        }
    }
    detail = "m = 2..8: quantum within 1e-9, classical min 1, NS min 0";
    return true;
}

// ---------------------------------------------------------------- criterion 7
bool qkd_attack(std::string& detail) {
    for (int m : {2, 4, 8}) {
        const RationalBox box = qkd_attack_box(m);
        // Chain value of the AB restriction (E's single input summed out).
        const Scenario pair_scen = Scenario::uniform(2, m, 2);
        RationalBox ab(pair_scen);
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        ab.set({a, b}, {x, y}, box.marginal({0, 1}, {a, b}, {x, y}, {0}));
        if (evaluate(chained(m), ab) != Rational(0)) {
            detail = "chain value nonzero at m=" + std::to_string(m);
            return false;
        }
        // B's output is a perfect copy of E's: the L1 distance from the
        // uniform product is exactly 1 (total variation exactly 1/2) at every
        // input pair.
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                std::vector<Rational> joint, prod;
                for (int b = 0; b < 2; ++b)
                    for (int e = 0; e < 2; ++e) {
                        joint.push_back(box.marginal({1, 2}, {b, e}, {y, 0}, {x}));
                        prod.push_back(Rational(1, 2) * box.marginal({2}, {e}, {0}, {x, y}));
                    }
                const Rational tv = total_variation(joint, prod);
                if (Rational(2) * tv != Rational(1)) {
                    detail = "BE distance " + rational_to_string(tv) + " at m=" + std::to_string(m);
                    return false;
                }
            }
        if (!check(box, ConstraintRegime::custom(three_party_line_subsets(0, 1, 2))).passes) {
            detail = "causality constraints broken at m=" + std::to_string(m);
            return false;
        }
    }
    detail = "m = 2, 4, 8: chain value 0, L1 distance 1, line constraints exact";
    return true;
}

// ---------------------------------------------------------------- criterion 8
bool mermin_quantum(std::string& detail) {
    for (int n : {3, 5}) {
        const FloatBox box = quantum::preset_box("mermin", n);
        if (!mermin_satisfied(box, 1e-9)) {
            detail = "constraints missed at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "GHZ boxes for n = 3, 5 satisfy every correlator constraint within 1e-9";
    return true;
}

// ---------------------------------------------------------------- criterion 9
bool geometry_equivalence(std::string& detail) {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coord(-5.0, 5.0), speed(1.1, 10.0);
    int checked = 0, disagreements = 0;
    while (checked < 1000) {
        const InfluenceModel model(speed(rng));
        const SpacetimeEvent a{0.0, {coord(rng), coord(rng)}};
        const SpacetimeEvent b{0.0, {coord(rng), coord(rng)}};
        SpacetimeEvent e{0.0, {coord(rng), coord(rng)}};
        const double la = std::hypot(a.r[0] - e.r[0], a.r[1] - e.r[1]);
        const double lb = std::hypot(b.r[0] - e.r[0], b.r[1] - e.r[1]);
        if (la < 1e-3 || lb < 1e-3) continue;
        double dot = 0;
        for (int k = 0; k < 2; ++k) dot += (a.r[k] - e.r[k]) * (b.r[k] - e.r[k]);
        const double angle = std::acos(std::clamp(dot / (la * lb), -1.0, 1.0));
        if (std::abs(angle - phi_alpha(model.alpha())) < 1e-6) continue;  // boundary band
        e.t = std::min(a.t - la / model.u, b.t - lb / model.u) - 1.0;
        ++checked;
        if (e_region_contains(a, b, e, model) == dual_signal_possible_sampled(e, a, b, model))
            ++disagreements;
    }
    detail = std::to_string(checked) + " configurations, " + std::to_string(disagreements) +
             " disagreements";
    return disagreements == 0;
}

// --------------------------------------------------------------- criterion 10
bool v_causal_escape(std::string& detail) {
    const double v = 2.5;
    const double s2 = std::sqrt(2.0);
    const std::vector<SpacetimeEvent> events{
        {0.0, {0, 0, 0}},
        {(1 + s2) / v, {1, 0, 0}},
        {(1 + s2) / v, {0, 1, 0}},
        {1.0 / v, {1, 1, 0}},
    };
    const char* names = "ABCD";
    std::string outcomes;
    bool all = true;
    for (int j = 0; j < 4; ++j) {
        std::vector<int> subset;
        for (int i = 0; i < 4; ++i)
            if (i != j) subset.push_back(i);
        const bool escapes = subset_escapes(events, subset, j);
        all = all && escapes;
        outcomes += std::string(outcomes.empty() ? "" : ", ") + "vs " + names[j] + ": " +
                    (escapes ? "escape" : "blocked");
    }
    detail = outcomes;
    if (!all)
        detail += " -- {B,C,D} against A is provably blocked at v = 2.5c: the escape gap is bounded "
                  "below by (1+sqrt2)/v - sqrt2/2 = 0.2586; it opens only for v > (2+sqrt2)c";
    return all;
}

// --------------------------------------------------------------- criterion 11
bool example_box(std::string& detail) {
    const RationalBox box = example_mermin_box();
    if (!check(box, ConstraintRegime::line_rc({0, 1, 2})).passes) {
        detail = "line constraints broken";
        return false;
    }
    const Scenario& scen = box.scenario();
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                if (box.marginal({1}, {0}, {y}, {x, z}) != Rational(1)) {
                    detail = "middle output not deterministic";
                    return false;
                }
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi) {
        const Tuple x = scen.input_tuple(xi);
        Rational good(0);
        for (std::size_t ai = 0; ai < scen.output_count(); ++ai) {
            const Tuple a = scen.output_tuple(ai);
            if ((a[0] ^ a[1] ^ a[2]) == (x[0] & x[1] & x[2])) good += box.at(xi, ai);
        }
        if (good != Rational(1)) {
            detail = "parity relation not certain";
            return false;
        }
    }
    const auto ns = check(box, ConstraintRegime::full_ns());
    bool ac_violation = false;
    for (const auto& viol : ns.violations) ac_violation |= viol.subset == std::vector<int>{0, 2};
    if (ns.passes || !ac_violation) {
        detail = "full no-signaling unexpectedly holds";
        return false;
    }
    detail = "line regime exact, deterministic middle output, parity certain, {A,C} violated";
    return true;
}

// --------------------------------------------------------------- criterion 12
bool property_suites(std::string& detail) {
    std::mt19937 rng(424243);

    // Exact LP against basic-solution enumeration.
    for (int trial = 0; trial < 200; ++trial) {
        const LinearProgram lp = testing::random_bounded_lp(rng);
        const auto sol = solve_lp(lp);
        if (sol.status != LPStatus::optimal) {
            detail = "random LP not optimal";
            return false;
        }
        const auto oracle = testing::brute_force_lp_max(lp);
        if (!oracle || *oracle != sol.value) {
            detail = "LP/enumeration mismatch on trial " + std::to_string(trial);
            return false;
        }
    }

    // Full no-signaling implies every line regime.
    const Scenario three = Scenario::uniform(3, 2, 2);
    const std::vector<std::vector<int>> orders{{0, 1, 2}, {1, 0, 2}, {2, 0, 1},
                                               {0, 2, 1}, {1, 2, 0}, {2, 1, 0}};
    std::uniform_int_distribution<int> odist(0, 1), wdist(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<Rational, RationalBox>> parts;
        std::vector<int> weights(5);
        int wsum = 0;
        for (auto& w : weights) {
            w = wdist(rng);
            wsum += w;
        }
        for (int t = 0; t < 5; ++t) {
            std::vector<std::vector<int>> responses(3, std::vector<int>(2));
            for (auto& resp : responses)
                for (auto& r : resp) r = odist(rng);
            parts.emplace_back(Rational(weights[t], wsum),
                               from_deterministic(three, DeterministicStrategy::local(responses)));
        }
        const RationalBox box = mix(parts);
        if (!check(box, ConstraintRegime::full_ns()).passes) {
            detail = "local mixture fails full NS";
            return false;
        }
        for (const auto& order : orders)
            if (!check(box, ConstraintRegime::line_rc(order)).passes) {
                detail = "NS box fails a line regime";
                return false;
            }
    }

    // Bayes ratio identity on random rational boxes.
    const auto priors = InputPriors<Rational>::uniform(three);
    std::uniform_int_distribution<int> cell(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        RationalBox box(three);
        for (std::size_t xi = 0; xi < three.input_count(); ++xi) {
            std::vector<int> nums(three.output_count());
            int sum = 0;
            for (auto& v : nums) {
                v = cell(rng);
                sum += v;
            }
            if (sum == 0) {
                nums[0] = 1;
                sum = 1;
            }
            for (std::size_t ai = 0; ai < three.output_count(); ++ai)
                box.at(xi, ai) = Rational(nums[ai], sum);
        }
        if (!ratio_identity_check(box, priors).holds) {
            detail = "ratio identity failed on trial " + std::to_string(trial);
            return false;
        }
    }

    detail = "200 LPs, 200 NS mixtures, 200 ratio audits, all exact";
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"full-NS monogamy maximum equals 4", ns_monogamy, 5.0},
        {"line-regime monogamy box and LP maximum equal 8", rc_monogamy, 5.0},
        {"causal-bilocal bound of the shipped functional equals 6", rcbl_bound, 10.0},
        {"quantum box value 2(1+2*sqrt(2)), svetlichny 0, inside the BL hull", rcbl_quantum},
        {"deterministic-input attack boxes for n = 3, 5, 7 and every target", randomness_attack, 30.0},
        {"chain expression: quantum, classical and NS optima for m = 2..8", chained_values},
        {"key-distribution attack boxes for m = 2, 4, 8", qkd_attack},
        {"GHZ boxes satisfy the correlator constraints for n = 3, 5", mermin_quantum},
        {"influence region matches the sampled relay search on 1000 configurations",
         geometry_equivalence, 60.0},
        {"every triple escapes the remaining cone at v = 2.5c", v_causal_escape},
        {"example box: line-exact, deterministic middle, certain parity, {A,C} broken", example_box},
        {"property suites: LP oracle, NS-implies-line, ratio identity (200 each)", property_suites,
         60.0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && criteria[i].time_limit > 0.0 && secs > criteria[i].time_limit) {
            ok = false;
            detail += " -- exceeded the " + std::to_string(criteria[i].time_limit) + "s budget";
        }
        std::printf("[%s] %02zu %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].label.c_str(),
                     secs, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
