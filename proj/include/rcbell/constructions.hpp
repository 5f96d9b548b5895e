#pragma once

#include <vector>

#include "rcbell/box.hpp"

namespace rcbell {

/// Bipartite box with a xor b = x*y, uniform otherwise. Algebraic CHSH value 4.
RationalBox pr_box();

/// Three-party binary box with deterministic b = 0 whose AC restriction is the
/// shared-randomness correlated box at y = 0 and the PR box at y = 1. Passes
/// the line regime, fails full no-signaling on {A, C}.
RationalBox example_mermin_box();

/// Line-causal box that satisfies every Mermin correlator constraint exactly
/// while answering the designated input deterministically: P(a*|x*) = 1.
///
/// Supports are built layer by layer over Hamming distance from x_star along
/// the ascending-position chain; each newly toggled input position flips one
/// of the two support branches, chosen by the position's rank parity and the
/// bit of x_star there. Construction re-derives every support through the
/// recursive chain and the closed form, then verifies the Mermin constraints
/// and the full contiguous-run family exactly; any mismatch throws.
RationalBox mermin_attack_box(int n, const Tuple& x_star);

/// Key-distribution attack box on (A, B, E): A and B see m inputs, E one.
/// Outputs are perfectly correlated triples except at (x, y) = (0, m-1) where
/// A is anti-correlated with B = E. Chain expression value is 0 while B's
/// output is a perfect copy of E's.
RationalBox qkd_attack_box(int m);

/// Three-party line-causal box achieving <CHSH>_AB = <CHSH>_BC = 4.
RationalBox monogamy_box();

/// Three-party line-causal box with deterministic B reaching the algebraic
/// Svetlichny value 8.
RationalBox rcbl_svetlichny_box();

/// Total variation distance (1/2) * sum |p_i - q_i| over a common index set.
template <class S>
S total_variation(const std::vector<S>& p, const std::vector<S>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: domain mismatch");
    S acc(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        S d = p[i] - q[i];
        if (d < S(0)) d = -d;
        acc += d;
    }
    return acc / 2;
}

}  // namespace rcbell
