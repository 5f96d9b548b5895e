#pragma once

#include <map>
#include <string>
#include <vector>

#include "rcbell/box.hpp"

namespace rcbell {

/// Per-party input distributions; every entry strictly positive so posteriors
/// stay defined.
template <class S>
struct InputPriors {
    std::vector<std::vector<S>> per_party;

    static InputPriors uniform(const Scenario& scen) {
        InputPriors p;
        for (int i = 0; i < scen.parties(); ++i)
            p.per_party.emplace_back(scen.inputs_of(i), S(1) / S(scen.inputs_of(i)));
        return p;
    }

    void validate(const Scenario& scen, double tol = 1e-9) const {
        if (static_cast<int>(per_party.size()) != scen.parties())
            throw std::invalid_argument("priors: one vector per party required");
        for (int i = 0; i < scen.parties(); ++i) {
            if (static_cast<int>(per_party[i].size()) != scen.inputs_of(i))
                throw std::invalid_argument("priors: vector length mismatch");
            S sum(0);
            for (const S& v : per_party[i]) {
                if (!(v > S(0))) throw std::invalid_argument("priors: entries must be strictly positive");
                sum += v;
            }
            if (!scalar_kind<S>::eq(sum, S(1), tol)) throw std::invalid_argument("priors: not normalized");
        }
    }
};

/// Partial assignment of other parties' inputs and outputs.
struct Observation {
    std::map<int, int> inputs;
    std::map<int, int> outputs;
};

/// Bayes posterior over party i's input given the observation, under
/// priors x box. Throws std::domain_error on a zero-probability observation.
template <class S>
std::vector<S> input_posterior(const Box<S>& box, const InputPriors<S>& priors, int party,
                               const Observation& obs) {
    const Scenario& scen = box.scenario();
    priors.validate(scen);
    if (party < 0 || party >= scen.parties()) throw std::out_of_range("posterior: party index");
    if (obs.inputs.count(party) || obs.outputs.count(party))
        throw std::invalid_argument("posterior: observation must not include the queried party");
    for (const auto& [p, v] : obs.inputs)
        if (p < 0 || p >= scen.parties() || v < 0 || v >= scen.inputs_of(p))
            throw std::out_of_range("posterior: observed input out of range");
    std::vector<int> out_parties;
    Tuple out_labels;
    for (const auto& [p, v] : obs.outputs) {
        if (p < 0 || p >= scen.parties() || v < 0 || v >= scen.outputs_of(p))
            throw std::out_of_range("posterior: observed output out of range");
        out_parties.push_back(p);
        out_labels.push_back(v);
    }

    // Free input positions (everything except observed inputs and the query).
    std::vector<int> free_parties;
    for (int p = 0; p < scen.parties(); ++p)
        if (p != party && !obs.inputs.count(p)) free_parties.push_back(p);
    std::vector<int> free_radices;
    for (int p : free_parties) free_radices.push_back(scen.inputs_of(p));

    std::vector<S> weight(scen.inputs_of(party), S(0));
    for (int xi = 0; xi < scen.inputs_of(party); ++xi) {
        Tuple x(scen.parties(), 0);
        x[party] = xi;
        for (const auto& [p, v] : obs.inputs) x[p] = v;
        Tuple free(free_parties.size(), 0);
        do {
            for (std::size_t k = 0; k < free_parties.size(); ++k) x[free_parties[k]] = free[k];
            S w = priors.per_party[party][xi];
            for (const auto& [p, v] : obs.inputs) w *= priors.per_party[p][v];
            for (std::size_t k = 0; k < free_parties.size(); ++k)
                w *= priors.per_party[free_parties[k]][free[k]];
            if (!out_parties.empty()) {
                Tuple x_s, x_c;
                const std::vector<int> comp = complement_of(out_parties, scen.parties());
                for (int p : out_parties) x_s.push_back(x[p]);
                for (int p : comp) x_c.push_back(x[p]);
                w *= box.marginal(out_parties, out_labels, x_s, x_c);
            }
            weight[xi] += w;
        } while (!free_parties.empty() && next_tuple(free, free_radices));
    }
    S total(0);
    for (const S& w : weight) total += w;
    if (!(total > S(0))) throw std::domain_error("posterior: observation has probability zero");
    for (S& w : weight) w = w / total;
    return weight;
}

/// Bayes-identity audit on a 3-party box with party order (A, B, C): at every
/// positive-probability cell,
///   P(y | x, z, a, c) / P(y)  ==  P(a,c | x,y,z) / Pbar(a,c | x,z),
/// where Pbar averages over y with B's prior. The left side is computed
/// through the posterior machinery and the right side directly, so the
/// equality is a genuine two-route check; its diagnostic content is the ratio.
template <class S>
struct RatioCell {
    int x, y, z, a, c;
    S ratio;
};

template <class S>
struct RatioReport {
    bool holds = true;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::vector<RatioCell<S>> cells;
};

template <class S>
RatioReport<S> ratio_identity_check(const Box<S>& box, const InputPriors<S>& priors, double tol = 1e-9) {
    const Scenario& scen = box.scenario();
    if (scen.parties() != 3) throw std::invalid_argument("ratio check: requires three parties");
    priors.validate(scen);
    RatioReport<S> report;
    const std::vector<int> pair{0, 2};
    for (int x = 0; x < scen.inputs_of(0); ++x)
        for (int z = 0; z < scen.inputs_of(2); ++z)
            for (int a = 0; a < scen.outputs_of(0); ++a)
                for (int c = 0; c < scen.outputs_of(2); ++c) {
                    // Pbar(a,c|x,z) under B's prior.
                    S pbar(0);
                    std::vector<S> pac(scen.inputs_of(1), S(0));
                    for (int y = 0; y < scen.inputs_of(1); ++y) {
                        pac[y] = box.marginal(pair, {a, c}, {x, z}, {y});
                        pbar += priors.per_party[1][y] * pac[y];
                    }
                    if (!(pbar > S(0))) {
                        ++report.skipped;
                        continue;
                    }
                    Observation obs;
                    obs.inputs = {{0, x}, {2, z}};
                    obs.outputs = {{0, a}, {2, c}};
                    const std::vector<S> post = input_posterior(box, priors, 1, obs);
                    for (int y = 0; y < scen.inputs_of(1); ++y) {
                        const S lhs = post[y] / priors.per_party[1][y];
                        const S rhs = pac[y] / pbar;
                        ++report.checked;
                        if (!scalar_kind<S>::eq(lhs, rhs, tol)) report.holds = false;
                        report.cells.push_back({x, y, z, a, c, rhs});
                    }
                }
    return report;
}

/// One common-cause decomposition of the pair's conditional distribution at a
/// fixed spectator input: weights q(lambda) and per-lambda pair components.
template <class S>
struct CommonCauseDecomposition {
    std::vector<S> weights;
    std::vector<Box<S>> components;  // each over the pair scenario
};

struct ScreeningReport {
    bool structural_ok = true;
    bool factorization_ok = true;
    bool mixture_ok = true;
    bool marginal_restriction_ok = true;
    std::vector<std::string> failures;
    bool passes() const {
        return structural_ok && factorization_ok && mixture_ok && marginal_restriction_ok;
    }
};

/// Verifies, for each supplied spectator input y, that every component
/// factorizes as P(a|x) * P(c|z) (with the A part z-independent and the C
/// part x-independent), that the mixture reproduces the box's pair marginal
/// at y, and that the weighted single-party marginals agree across the
/// supplied y values.
template <class S>
ScreeningReport screening_check(const Box<S>& box, int party_a, int spectator, int party_c,
                                const std::map<int, CommonCauseDecomposition<S>>& per_y,
                                double tol = 1e-9) {
    const Scenario& scen = box.scenario();
    if (scen.parties() != 3) throw std::invalid_argument("screening: requires three parties");
    if (party_a < 0 || party_c >= 3 || !(party_a < party_c) || spectator == party_a ||
        spectator == party_c || spectator < 0 || spectator >= 3)
        throw std::invalid_argument("screening: need party_a < party_c and a distinct spectator");
    const std::vector<int> pair{party_a, party_c};
    ScreeningReport report;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        report.failures.push_back(msg);
    };

    const Scenario pair_scen({scen.inputs_of(pair[0]), scen.inputs_of(pair[1])},
                             {scen.outputs_of(pair[0]), scen.outputs_of(pair[1])});
    // Weighted A/C marginals per spectator input, for the cross-y restriction.
    std::map<int, std::vector<S>> mean_a, mean_c;

    for (const auto& [y, decomp] : per_y) {
        if (y < 0 || y >= scen.inputs_of(spectator))
            throw std::out_of_range("screening: spectator input out of range");
        if (decomp.weights.size() != decomp.components.size())
            throw std::invalid_argument("screening: weight/component count mismatch");
        S wsum(0);
        for (const S& w : decomp.weights) {
            if (!scalar_kind<S>::nonneg(w, 0.0)) fail(report.structural_ok, "negative weight");
            wsum += w;
        }
        if (!scalar_kind<S>::eq(wsum, S(1), tol))
            fail(report.structural_ok, "weights at y=" + std::to_string(y) + " sum to " +
                                           scalar_kind<S>::str(wsum));
        std::vector<S> acc_a(pair_scen.inputs_of(0) * pair_scen.outputs_of(0), S(0));
        std::vector<S> acc_c(pair_scen.inputs_of(1) * pair_scen.outputs_of(1), S(0));
        for (std::size_t l = 0; l < decomp.components.size(); ++l) {
            const Box<S>& comp = decomp.components[l];
            if (comp.scenario() != pair_scen) {
                fail(report.structural_ok, "component scenario mismatch");
                continue;
            }
            if (!comp.validate().passes) fail(report.structural_ok, "component is not a valid box");
            // A marginal must not depend on z, C marginal not on x.
            for (int x = 0; x < pair_scen.inputs_of(0); ++x)
                for (int a = 0; a < pair_scen.outputs_of(0); ++a) {
                    const S ref = comp.marginal({0}, {a}, {x}, {0});
                    for (int z = 1; z < pair_scen.inputs_of(1); ++z)
                        if (!scalar_kind<S>::eq(comp.marginal({0}, {a}, {x}, {z}), ref, tol))
                            fail(report.factorization_ok, "component A-marginal depends on z");
                }
            for (int z = 0; z < pair_scen.inputs_of(1); ++z)
                for (int c = 0; c < pair_scen.outputs_of(1); ++c) {
                    const S ref = comp.marginal({1}, {c}, {z}, {0});
                    for (int x = 1; x < pair_scen.inputs_of(0); ++x)
                        if (!scalar_kind<S>::eq(comp.marginal({1}, {c}, {z}, {x}), ref, tol))
                            fail(report.factorization_ok, "component C-marginal depends on x");
                }
            for (int x = 0; x < pair_scen.inputs_of(0); ++x)
                for (int z = 0; z < pair_scen.inputs_of(1); ++z)
                    for (int a = 0; a < pair_scen.outputs_of(0); ++a)
                        for (int c = 0; c < pair_scen.outputs_of(1); ++c) {
                            const S lhs = comp.p({a, c}, {x, z});
                            const S rhs =
                                comp.marginal({0}, {a}, {x}, {z}) * comp.marginal({1}, {c}, {z}, {x});
                            if (!scalar_kind<S>::eq(lhs, rhs, tol))
                                fail(report.factorization_ok,
                                     "component " + std::to_string(l) + " at y=" + std::to_string(y) +
                                         " is not a product");
                        }
            for (int x = 0; x < pair_scen.inputs_of(0); ++x)
                for (int a = 0; a < pair_scen.outputs_of(0); ++a)
                    acc_a[x * pair_scen.outputs_of(0) + a] +=
                        decomp.weights[l] * comp.marginal({0}, {a}, {x}, {0});
            for (int z = 0; z < pair_scen.inputs_of(1); ++z)
                for (int c = 0; c < pair_scen.outputs_of(1); ++c)
                    acc_c[z * pair_scen.outputs_of(1) + c] +=
                        decomp.weights[l] * comp.marginal({1}, {c}, {z}, {0});
        }
        mean_a[y] = std::move(acc_a);
        mean_c[y] = std::move(acc_c);

        // Mixture must reproduce the box's pair marginal at this spectator input.
        for (int x = 0; x < pair_scen.inputs_of(0); ++x)
            for (int z = 0; z < pair_scen.inputs_of(1); ++z)
                for (int a = 0; a < pair_scen.outputs_of(0); ++a)
                    for (int c = 0; c < pair_scen.outputs_of(1); ++c) {
                        S mixed(0);
                        for (std::size_t l = 0; l < decomp.components.size(); ++l)
                            if (decomp.components[l].scenario() == pair_scen)
                                mixed += decomp.weights[l] * decomp.components[l].p({a, c}, {x, z});
                        const S target = box.marginal(pair, {a, c}, {x, z}, {y});
                        if (!scalar_kind<S>::eq(mixed, target, tol))
                            fail(report.mixture_ok, "mixture misses the box marginal at y=" +
                                                        std::to_string(y));
                    }
    }

    if (per_y.size() > 1) {
        const auto& first_a = mean_a.begin()->second;
        const auto& first_c = mean_c.begin()->second;
        for (const auto& [y, vec] : mean_a)
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (!scalar_kind<S>::eq(vec[i], first_a[i], tol))
                    fail(report.marginal_restriction_ok, "A-marginal restriction broken at y=" +
                                                             std::to_string(y));
        for (const auto& [y, vec] : mean_c)
            for (std::size_t i = 0; i < vec.size(); ++i)
                if (!scalar_kind<S>::eq(vec[i], first_c[i], tol))
                    fail(report.marginal_restriction_ok, "C-marginal restriction broken at y=" +
                                                             std::to_string(y));
    }
    return report;
}

}  // namespace rcbell
