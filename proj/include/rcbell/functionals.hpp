#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcbell/box.hpp"
#include "rcbell/rational.hpp"
#include "rcbell/scenario.hpp"

namespace rcbell {

/// A Bell expression as a rational coefficient over every (a, x) cell:
/// value(box) = sum coeffs[flat(x,a)] * P(a|x). Named bounds are annotations;
/// exact ones are rational, irrational ones live in approx_bounds.
struct BellFunctional {
    Scenario scenario;
    std::string name;
    std::vector<Rational> coeffs;
    std::map<std::string, Rational> bounds;
    std::map<std::string, double> approx_bounds;
    // The single-party-marginal expansion convention (spectators pinned to
    // input 0) is only well-defined on boxes whose marginals are input
    // independent; evaluation elsewhere should be flagged, not trusted.
    bool requires_full_ns = false;

    explicit BellFunctional(Scenario scen, std::string label = "")
        : scenario(std::move(scen)), name(std::move(label)), coeffs(scenario.table_size(), Rational(0)) {}
};

template <class S>
S evaluate(const BellFunctional& f, const Box<S>& box) {
    if (box.scenario() != f.scenario) throw std::invalid_argument("evaluate: scenario mismatch");
    S total(0);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i].is_zero()) continue;
        S c;
        if constexpr (scalar_kind<S>::exact)
            c = f.coeffs[i];
        else
            c = to_double(f.coeffs[i]);
        total += c * box.table()[i];
    }
    return total;
}

BellFunctional operator+(const BellFunctional& a, const BellFunctional& b);

/// Adds weight * <prod_i O^{(i)}_{x_i}> over `targets` = list of (party, input)
/// to the functional's coefficients. Spectator parties get their input pinned
/// (default 0) and their outputs summed with weight 1; target parties must be
/// binary-output and contribute sign (-1)^{a_i}.
void add_correlator(BellFunctional& f, const std::vector<std::pair<int, int>>& targets, const Rational& weight,
                    const std::map<int, int>& spectator_inputs = {});

/// CHSH between two parties of a binary scenario, spectators pinned to 0.
BellFunctional chsh(const Scenario& scenario, int party_a, int party_b);

/// <CHSH>_{01} + <CHSH>_{12} on the 3-party binary scenario.
BellFunctional chsh_monogamy_sum();

/// Chain expression with m inputs per party:
///   sum_{x=y or x=y+1} P(a xor b = 1 | x,y) + P(a xor b = 0 | 0, m-1).
BellFunctional chained(int m);

/// The 3-party Svetlichny combination of eight full correlators (bound 4 on
/// bilocal decompositions, algebraic maximum 8).
BellFunctional svetlichny();

/// 2<A0B0> + <A0C0>_{y=0} + <A0C0>_{y=1} + 2<B0C1> - 2<A1B1C0> + 2<A1B1C1>
/// on the 3-party binary scenario (bound 6 on causal bilocal decompositions).
BellFunctional rcbl_functional();

/// The 23-term four-party hidden-influence expression (bound 7 when the
/// conditional BC|AD statistics are local).
BellFunctional hidden_influence();

/// Full-correlator constraint set: required correlator value per input tuple.
struct CorrelatorConstraintSet {
    int parties = 0;
    std::vector<std::pair<Tuple, int>> required;  // (input tuple, sign in {-1,+1})
};

/// Mermin constraints for odd n: for inputs with odd weight sum(x) = n - 2k,
/// the n-party correlator must equal (-1)^k.
CorrelatorConstraintSet mermin_constraints(int n);

template <class S>
bool mermin_satisfied(const Box<S>& box, double tol = 1e-9) {
    const auto cs = mermin_constraints(box.scenario().parties());
    if (!box.scenario().all_binary_outputs())
        throw std::domain_error("mermin: requires binary outputs");
    for (const auto& [x, sign] : cs.required) {
        const S c = box.correlator(x);
        if (!scalar_kind<S>::eq(c, S(sign), tol)) return false;
    }
    return true;
}

/// Lookup used by the CLI and bindings; `m` is consumed by chained().
/// Known names: chsh, chsh-sum, chained, svetlichny, rcbl, hidden-influence.
std::optional<BellFunctional> functional_by_name(const std::string& name, int m = 2);
std::vector<std::string> functional_names();

}  // namespace rcbell
