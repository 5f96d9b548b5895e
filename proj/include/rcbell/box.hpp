#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rcbell/rational.hpp"
#include "rcbell/scenario.hpp"

namespace rcbell {

/// Comparison policy per scalar kind: exact for Rational, tolerance for double.
template <class S>
struct scalar_kind;

template <>
struct scalar_kind<Rational> {
    static constexpr bool exact = true;
    static bool eq(const Rational& a, const Rational& b, double) { return a == b; }
    static bool nonneg(const Rational& v, double) { return v >= 0; }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static std::string str(const Rational& v) { return rational_to_string(v); }
};

template <>
struct scalar_kind<double> {
    static constexpr bool exact = false;
    static bool eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }
    static bool nonneg(double v, double tol) { return v >= -tol; }
    static bool is_zero(double v) { return v == 0.0; }
    static std::string str(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }
};

/// Default tolerances for float-kind tables. Rational tables are checked exactly.
struct Tolerances {
    double entry_nonneg = 1e-12;
    double value_eq = 1e-9;
};

struct ValidationIssue {
    enum class Kind { negative_entry, row_sum };
    Kind kind;
    Tuple x;
    Tuple a;            // only for negative_entry
    std::string value;  // offending entry or row sum
};

struct ValidationReport {
    bool passes = true;
    std::vector<ValidationIssue> issues;
};

inline std::vector<int> complement_of(const std::vector<int>& subset, int n_parties) {
    std::vector<int> comp;
    std::size_t k = 0;
    for (int p = 0; p < n_parties; ++p) {
        if (k < subset.size() && subset[k] == p)
            ++k;
        else
            comp.push_back(p);
    }
    return comp;
}

/// Conditional probability table P(a|x) over a scenario, stored densely in the
/// canonical flat order. Immutable in spirit: constructed once, then queried.
template <class S>
class Box {
  public:
    using value_type = S;

    explicit Box(Scenario scenario)
        : scenario_(std::move(scenario)), table_(scenario_.table_size(), S(0)) {}

    Box(Scenario scenario, std::vector<S> table) : scenario_(std::move(scenario)), table_(std::move(table)) {
        if (table_.size() != scenario_.table_size())
            throw std::invalid_argument("box: table size does not match scenario");
    }

    const Scenario& scenario() const { return scenario_; }
    const std::vector<S>& table() const { return table_; }

    const S& at(std::size_t input_idx, std::size_t output_idx) const {
        return table_[input_idx * scenario_.output_count() + output_idx];
    }
    S& at(std::size_t input_idx, std::size_t output_idx) {
        return table_[input_idx * scenario_.output_count() + output_idx];
    }
    const S& p(const Tuple& a, const Tuple& x) const {
        return table_[scenario_.flat_index(x, a)];
    }
    void set(const Tuple& a, const Tuple& x, S v) { table_[scenario_.flat_index(x, a)] = std::move(v); }

    ValidationReport validate(const Tolerances& tol = {}) const {
        ValidationReport rep;
        const std::size_t nx = scenario_.input_count(), na = scenario_.output_count();
        for (std::size_t xi = 0; xi < nx; ++xi) {
            S sum(0);
            for (std::size_t ai = 0; ai < na; ++ai) {
                const S& v = at(xi, ai);
                if (!scalar_kind<S>::nonneg(v, tol.entry_nonneg)) {
                    rep.passes = false;
                    rep.issues.push_back({ValidationIssue::Kind::negative_entry, scenario_.input_tuple(xi),
                                          scenario_.output_tuple(ai), scalar_kind<S>::str(v)});
                }
                sum += v;
            }
            if (!scalar_kind<S>::eq(sum, S(1), tol.value_eq)) {
                rep.passes = false;
                rep.issues.push_back({ValidationIssue::Kind::row_sum, scenario_.input_tuple(xi), {},
                                      scalar_kind<S>::str(sum)});
            }
        }
        return rep;
    }

    /// P(a_S | x) marginalized over the complement's outputs, with the full
    /// input tuple assembled from x_S on `subset` (ascending party indices) and
    /// x_complement on the remaining parties (also ascending).
    S marginal(const std::vector<int>& subset, const Tuple& a_subset, const Tuple& x_subset,
               const Tuple& x_complement) const {
        const int n = scenario_.parties();
        check_subset(subset, n);
        if (a_subset.size() != subset.size() || x_subset.size() != subset.size())
            throw std::invalid_argument("marginal: subset tuple lengths mismatch");
        std::vector<int> comp = complement_of(subset, n);
        if (x_complement.size() != comp.size())
            throw std::invalid_argument("marginal: complement input tuple length mismatch");

        Tuple x(n, 0);
        for (std::size_t i = 0; i < subset.size(); ++i) x[subset[i]] = x_subset[i];
        for (std::size_t i = 0; i < comp.size(); ++i) x[comp[i]] = x_complement[i];
        const std::size_t xi = scenario_.input_index(x);

        Tuple a(n, 0);
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (a_subset[i] < 0 || a_subset[i] >= scenario_.outputs_of(subset[i]))
                throw std::out_of_range("marginal: output label out of range");
            a[subset[i]] = a_subset[i];
        }
        std::vector<int> comp_radices;
        for (int pc : comp) comp_radices.push_back(scenario_.outputs_of(pc));
        S sum(0);
        Tuple ac(comp.size(), 0);
        do {
            for (std::size_t i = 0; i < comp.size(); ++i) a[comp[i]] = ac[i];
            sum += at(xi, scenario_.output_index(a));
        } while (!comp.empty() && next_tuple(ac, comp_radices));
        return sum;
    }

    /// Parity correlator P(xor a_i = 0 | x) - P(xor a_i = 1 | x).
    /// Requires binary outputs for every party.
    S correlator(const Tuple& x) const {
        if (!scenario_.all_binary_outputs())
            throw std::domain_error("correlator: requires binary outputs for all parties");
        const std::size_t xi = scenario_.input_index(x);
        const std::size_t na = scenario_.output_count();
        S value(0);
        for (std::size_t ai = 0; ai < na; ++ai) {
            // Output labels are bits; the parity of ai's bit expansion is the
            // parity of the output tuple.
            const bool odd = parity_of_index(ai);
            if (odd)
                value -= at(xi, ai);
            else
                value += at(xi, ai);
        }
        return value;
    }

    /// Two-party correlator <A_{x_i} C_{x_j}> with every spectator's input
    /// fixed and spectator outputs marginalized. x_spectators follows the
    /// ascending order of the spectator parties.
    S conditioned_pair_correlator(int party_i, int party_j, int x_i, int x_j,
                                  const Tuple& x_spectators) const {
        const int n = scenario_.parties();
        if (party_i == party_j || party_i < 0 || party_j < 0 || party_i >= n || party_j >= n)
            throw std::invalid_argument("pair correlator: invalid party pair");
        if (scenario_.outputs_of(party_i) != 2 || scenario_.outputs_of(party_j) != 2)
            throw std::domain_error("pair correlator: pair must have binary outputs");
        std::vector<int> pair{party_i, party_j};
        std::sort(pair.begin(), pair.end());
        std::vector<int> comp = complement_of(pair, n);
        if (x_spectators.size() != comp.size())
            throw std::invalid_argument("pair correlator: spectator tuple length mismatch");
        Tuple x_pair(2, 0);
        x_pair[0] = pair[0] == party_i ? x_i : x_j;
        x_pair[1] = pair[1] == party_j ? x_j : x_i;
        S value(0);
        for (int ai = 0; ai < 2; ++ai)
            for (int aj = 0; aj < 2; ++aj) {
                const S m = marginal(pair, Tuple{ai, aj}, x_pair, x_spectators);
                if ((ai ^ aj) != 0)
                    value -= m;
                else
                    value += m;
            }
        return value;
    }

  private:
    static void check_subset(const std::vector<int>& subset, int n) {
        if (subset.empty()) throw std::invalid_argument("party subset must be non-empty");
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (subset[i] < 0 || subset[i] >= n) throw std::out_of_range("party index out of range");
            if (i > 0 && subset[i] <= subset[i - 1])
                throw std::invalid_argument("party subset must be strictly ascending");
        }
    }
    static bool parity_of_index(std::size_t ai) {
        // Outputs are binary, so the flat output index is the tuple read as a
        // bit string; parity is its popcount parity.
        int bits = 0;
        while (ai) {
            bits ^= static_cast<int>(ai & 1u);
            ai >>= 1;
        }
        return bits != 0;
    }

    Scenario scenario_;
    std::vector<S> table_;
};

using RationalBox = Box<Rational>;
using FloatBox = Box<double>;

/// Per-party response functions a_i = f_i(x_i), or one joint response a = F(x).
struct DeterministicStrategy {
    struct Local {
        // responses[i][x_i] = a_i
        std::vector<std::vector<int>> responses;
    };
    struct Joint {
        // outputs[input_index] = output tuple
        std::vector<Tuple> outputs;
    };
    std::variant<Local, Joint> body;

    static DeterministicStrategy local(std::vector<std::vector<int>> responses) {
        return DeterministicStrategy{Local{std::move(responses)}};
    }
    static DeterministicStrategy joint(std::vector<Tuple> outputs) {
        return DeterministicStrategy{Joint{std::move(outputs)}};
    }
};

inline RationalBox from_deterministic(const Scenario& scenario, const DeterministicStrategy& strategy) {
    RationalBox box(scenario);
    const std::size_t nx = scenario.input_count();
    if (const auto* local = std::get_if<DeterministicStrategy::Local>(&strategy.body)) {
        if (static_cast<int>(local->responses.size()) != scenario.parties())
            throw std::invalid_argument("deterministic: one response table per party required");
        for (int i = 0; i < scenario.parties(); ++i)
            if (static_cast<int>(local->responses[i].size()) != scenario.inputs_of(i))
                throw std::invalid_argument("deterministic: response table covers all inputs");
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const Tuple x = scenario.input_tuple(xi);
            Tuple a(scenario.parties());
            for (int i = 0; i < scenario.parties(); ++i) {
                a[i] = local->responses[i][x[i]];
                if (a[i] < 0 || a[i] >= scenario.outputs_of(i))
                    throw std::out_of_range("deterministic: response out of output range");
            }
            box.at(xi, scenario.output_index(a)) = 1;
        }
        return box;
    }
    const auto& joint = std::get<DeterministicStrategy::Joint>(strategy.body);
    if (joint.outputs.size() != nx)
        throw std::invalid_argument("deterministic: joint response must cover every input tuple");
    for (std::size_t xi = 0; xi < nx; ++xi) box.at(xi, scenario.output_index(joint.outputs[xi])) = 1;
    return box;
}

/// Tensor product of two boxes over disjoint party sets. `ordering` assigns
/// each combined slot to a factor (0 = next left party, 1 = next right party);
/// empty means all left parties first.
template <class S>
Box<S> product(const Box<S>& left, const Box<S>& right, std::vector<int> ordering = {}) {
    const int nl = left.scenario().parties(), nr = right.scenario().parties();
    if (ordering.empty()) {
        ordering.assign(static_cast<std::size_t>(nl), 0);
        ordering.insert(ordering.end(), static_cast<std::size_t>(nr), 1);
    }
    if (static_cast<int>(ordering.size()) != nl + nr)
        throw std::invalid_argument("product: ordering must cover all combined parties");
    std::vector<int> slot_of_left, slot_of_right;
    for (std::size_t s = 0; s < ordering.size(); ++s) {
        if (ordering[s] == 0)
            slot_of_left.push_back(static_cast<int>(s));
        else if (ordering[s] == 1)
            slot_of_right.push_back(static_cast<int>(s));
        else
            throw std::invalid_argument("product: ordering entries must be 0 or 1");
    }
    if (static_cast<int>(slot_of_left.size()) != nl || static_cast<int>(slot_of_right.size()) != nr)
        throw std::invalid_argument("product: ordering factor counts mismatch");

    std::vector<int> inputs(ordering.size()), outputs(ordering.size());
    for (int i = 0; i < nl; ++i) {
        inputs[slot_of_left[i]] = left.scenario().inputs_of(i);
        outputs[slot_of_left[i]] = left.scenario().outputs_of(i);
    }
    for (int i = 0; i < nr; ++i) {
        inputs[slot_of_right[i]] = right.scenario().inputs_of(i);
        outputs[slot_of_right[i]] = right.scenario().outputs_of(i);
    }
    Scenario combined(inputs, outputs);
    Box<S> box(combined);
    const std::size_t nx = combined.input_count(), na = combined.output_count();
    for (std::size_t xi = 0; xi < nx; ++xi) {
        const Tuple x = combined.input_tuple(xi);
        Tuple xl(nl), xr(nr);
        for (int i = 0; i < nl; ++i) xl[i] = x[slot_of_left[i]];
        for (int i = 0; i < nr; ++i) xr[i] = x[slot_of_right[i]];
        const std::size_t xli = left.scenario().input_index(xl);
        const std::size_t xri = right.scenario().input_index(xr);
        for (std::size_t ai = 0; ai < na; ++ai) {
            const Tuple a = combined.output_tuple(ai);
            Tuple al(nl), ar(nr);
            for (int i = 0; i < nl; ++i) al[i] = a[slot_of_left[i]];
            for (int i = 0; i < nr; ++i) ar[i] = a[slot_of_right[i]];
            box.at(xi, ai) = left.at(xli, left.scenario().output_index(al)) *
                             right.at(xri, right.scenario().output_index(ar));
        }
    }
    return box;
}

/// Convex combination of boxes over one scenario. Weights must be nonnegative
/// and sum to one (exactly for Rational, within tol for double).
template <class S>
Box<S> mix(const std::vector<std::pair<S, Box<S>>>& weighted, double tol = 1e-9) {
    if (weighted.empty()) throw std::invalid_argument("mix: empty list");
    const Scenario& scen = weighted.front().second.scenario();
    S wsum(0);
    for (const auto& [w, b] : weighted) {
        if (!scalar_kind<S>::nonneg(w, 0.0)) throw std::invalid_argument("mix: negative weight");
        if (b.scenario() != scen) throw std::invalid_argument("mix: scenario mismatch");
        wsum += w;
    }
    if (!scalar_kind<S>::eq(wsum, S(1), tol)) throw std::invalid_argument("mix: weights must sum to 1");
    Box<S> box(scen);
    for (std::size_t i = 0; i < scen.table_size(); ++i) {
        S acc(0);
        for (const auto& [w, b] : weighted) acc += w * b.table()[i];
        box.at(i / scen.output_count(), i % scen.output_count()) = acc;
    }
    return box;
}

inline FloatBox to_float(const RationalBox& box) {
    std::vector<double> t(box.table().size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = to_double(box.table()[i]);
    return FloatBox(box.scenario(), std::move(t));
}

/// Snaps a float table to exact rationals (denominator cap, residual
/// tolerance) and repairs each row sum to exactly 1 by absorbing the residual
/// into the row's largest entry. Throws if any residual exceeds tol.
inline RationalBox rationalize_box(const FloatBox& box, std::int64_t den_cap = 1000000,
                                   double tol = 1e-9) {
    const Scenario& scen = box.scenario();
    RationalBox out(scen);
    const std::size_t nx = scen.input_count(), na = scen.output_count();
    for (std::size_t xi = 0; xi < nx; ++xi) {
        Rational sum(0);
        std::size_t argmax = 0;
        for (std::size_t ai = 0; ai < na; ++ai) {
            auto r = rationalize(box.at(xi, ai), den_cap, tol);
            if (!r) throw std::invalid_argument("rationalize: entry not representable within tolerance");
            if (*r < 0) {
                if (to_double(*r) < -tol) throw std::invalid_argument("rationalize: negative entry");
                *r = 0;
            }
            out.at(xi, ai) = *r;
            sum += *r;
            if (*r > out.at(xi, argmax)) argmax = ai;
        }
        const Rational residual = Rational(1) - sum;
        if (std::abs(to_double(residual)) > tol)
            throw std::invalid_argument("rationalize: row sum residual exceeds tolerance");
        out.at(xi, argmax) += residual;
        if (out.at(xi, argmax) < 0) throw std::invalid_argument("rationalize: repair made entry negative");
    }
    return out;
}

}  // namespace rcbell
