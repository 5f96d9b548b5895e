#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rcbell/box.hpp"
#include "rcbell/constraints.hpp"
#include "rcbell/functionals.hpp"
#include "rcbell/linprog.hpp"

namespace rcbell {

/// Equality-form LP over table variables P(a|x) >= 0: normalization per input
/// plus the regime's marginal-equality rows (every complement input compared
/// against the all-zeros reference).
LinearProgram polytope_lp(const Scenario& scenario, const ConstraintRegime& regime,
                          const std::vector<Rational>& objective);

struct PolytopeOptimum {
    Rational value;
    RationalBox witness;
    LPSolution lp;
};

/// Exact maximum of a functional over the regime's polytope; the witness box
/// is validated and re-checked against the regime before returning.
PolytopeOptimum maximize_over_polytope(const BellFunctional& f, const ConstraintRegime& regime);

/// Exact minimum (negated maximization).
PolytopeOptimum minimize_over_polytope(const BellFunctional& f, const ConstraintRegime& regime);

/// Causal-bilocal maximization over the three cut families. AB|C and BC|A
/// pair a bipartite no-signaling component with a deterministic lone party;
/// AC|B pairs a deterministic B with a spectator-input-extended AC component
/// whose own marginals P(a|x) and P(c|z) stay input-independent.
struct RcblOptimum {
    Rational value;
    std::string family;         // "AB|C", "AC|B" or "BC|A"
    std::vector<int> strategy;  // lone party's deterministic responses per input
    RationalBox component;      // optimizing component over its own scenario
    RationalBox witness;        // assembled three-party box
};
RcblOptimum rcbl_maximize(const BellFunctional& f);

/// L-infinity distance from a 3-party binary box to the convex hull of the
/// bilocal product vertices (deterministic signaling pair times deterministic
/// lone party, all three cuts).
struct BlMembership {
    bool inside = false;
    Rational distance;
    RationalBox closest;
    std::vector<std::pair<std::string, Rational>> weights;  // nonzero vertex weights
};
BlMembership bl_membership(const RationalBox& box, const Rational& tolerance = Rational(0));
BlMembership bl_membership(const FloatBox& box, double tolerance = 1e-6);

}  // namespace rcbell
