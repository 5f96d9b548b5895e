#include "rcbell/constructions.hpp"

#include <numeric>

#include "rcbell/constraints.hpp"
#include "rcbell/functionals.hpp"

namespace rcbell {

RationalBox pr_box() {
    RationalBox box(Scenario::uniform(2, 2, 2));
    const Rational half(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) box.set({a, b}, {x, y}, half);
    return box;
}

RationalBox example_mermin_box() {
    RationalBox box(Scenario::uniform(3, 2, 2));
    const Rational half(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                if (y == 1 && x == 1 && z == 1) {
                    box.set({0, 0, 1}, {x, y, z}, half);
                    box.set({1, 0, 0}, {x, y, z}, half);
                } else {
                    box.set({0, 0, 0}, {x, y, z}, half);
                    box.set({1, 0, 1}, {x, y, z}, half);
                }
            }
    return box;
}

namespace {

// Support pair {left, right} for one input of the attack box, as output
// bitmasks (party 0 = most significant bit).
struct SupportPair {
    std::size_t left;
    std::size_t right;
    bool matches(const SupportPair& o) const {
        return (left == o.left && right == o.right) || (left == o.right && right == o.left);
    }
};

std::size_t bit_of(int n, int position) { return std::size_t{1} << (n - 1 - position); }

// Applies the branch-flip rule for toggling input `position` at chain rank
// `rank` (1-based): odd rank flips left when x*[position] = 1, right when 0;
// even rank flips the other branch.
SupportPair apply_flip(SupportPair s, int n, int position, int rank, const Tuple& x_star) {
    const bool flip_left = (rank % 2 == 1) ? (x_star[position] == 1) : (x_star[position] == 0);
    if (flip_left)
        s.left ^= bit_of(n, position);
    else
        s.right ^= bit_of(n, position);
    return s;
}

}  // namespace

RationalBox mermin_attack_box(int n, const Tuple& x_star) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("mermin attack: n must be odd and >= 3");
    if (static_cast<int>(x_star.size()) != n) throw std::invalid_argument("mermin attack: x* length mismatch");
    int weight = 0;
    for (int b : x_star) {
        if (b != 0 && b != 1) throw std::invalid_argument("mermin attack: x* must be a bit string");
        weight += b;
    }
    if (weight % 2 == 0)
        throw std::invalid_argument("mermin attack: x* must appear in the inequality (odd weight)");

    const int k_star = (n - weight) / 2;
    // Deterministic answer at x*: parity must equal (-1)^{k*}; pick the
    // lexicographically smallest representative of that parity class.
    std::size_t a_star = 0;
    if (k_star % 2 == 1) a_star = bit_of(n, 0);

    const Scenario scen = Scenario::uniform(n, 2, 2);
    const std::size_t n_inputs = scen.input_count();
    const std::size_t x_star_idx = scen.input_index(x_star);

    // Closed form: position d in the difference set D(x), taken in ascending
    // order with rank m, lands in the left branch iff (m odd and x*_d = 1) or
    // (m even and x*_d = 0).
    std::vector<SupportPair> support(n_inputs);
    for (std::size_t xi = 0; xi < n_inputs; ++xi) {
        SupportPair s{a_star, a_star};
        int rank = 0;
        const std::size_t diff = xi ^ x_star_idx;
        for (int pos = 0; pos < n; ++pos)
            if (diff & bit_of(n, pos)) s = apply_flip(s, n, pos, ++rank, x_star);
        support[xi] = s;
    }

    // Recursive route: re-derive each support from its canonical predecessor
    // (largest differing position removed) and demand agreement.
    std::vector<std::size_t> order(n_inputs);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
        const int pu = __builtin_popcountll(u ^ x_star_idx), pv = __builtin_popcountll(v ^ x_star_idx);
        if (pu != pv) return pu < pv;
        return u < v;
    });
    for (std::size_t xi : order) {
        const std::size_t diff = xi ^ x_star_idx;
        const int h = __builtin_popcountll(diff);
        if (h == 0) continue;
        int last_pos = -1;
        for (int pos = 0; pos < n; ++pos)
            if (diff & bit_of(n, pos)) last_pos = pos;
        const std::size_t pred = xi ^ bit_of(n, last_pos);
        const SupportPair derived = apply_flip(support[pred], n, last_pos, h, x_star);
        if (!derived.matches(support[xi]))
            throw std::logic_error("mermin attack: chain and closed-form supports disagree");
    }

    RationalBox box(scen);
    const Rational half(1, 2);
    for (std::size_t xi = 0; xi < n_inputs; ++xi) {
        if (support[xi].left == support[xi].right)
            box.at(xi, support[xi].left) = 1;
        else {
            box.at(xi, support[xi].left) = half;
            box.at(xi, support[xi].right) = half;
        }
    }

    // Fail loudly if the construction does not deliver what it promises.
    if (box.at(x_star_idx, a_star) != 1)
        throw std::logic_error("mermin attack: designated input is not deterministic");
    if (!mermin_satisfied(box, 0.0))
        throw std::logic_error("mermin attack: Mermin constraint set violated");
    std::vector<int> line(n);
    std::iota(line.begin(), line.end(), 0);
    if (!check(box, ConstraintRegime::line_rc(line)).passes)
        throw std::logic_error("mermin attack: contiguous-run constraints violated");
    return box;
}

RationalBox qkd_attack_box(int m) {
    if (m < 2) throw std::invalid_argument("qkd attack: m must be >= 2");
    RationalBox box(Scenario({m, m, 1}, {2, 2, 2}));
    const Rational half(1, 2);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            if (x == 0 && y == m - 1) {
                box.set({0, 1, 1}, {x, y, 0}, half);
                box.set({1, 0, 0}, {x, y, 0}, half);
            } else {
                box.set({0, 0, 0}, {x, y, 0}, half);
                box.set({1, 1, 1}, {x, y, 0}, half);
            }
        }
    return box;
}

RationalBox monogamy_box() {
    RationalBox box(Scenario::uniform(3, 2, 2));
    const Rational half(1, 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                const Tuple in{x, y, z};
                if (x == 0 && y == 1 && z == 1) {
                    box.set({0, 0, 1}, in, half);
                    box.set({1, 1, 0}, in, half);
                } else if (x == 1 && y == 1 && z == 0) {
                    box.set({0, 1, 1}, in, half);
                    box.set({1, 0, 0}, in, half);
                } else if (x == 1 && y == 1 && z == 1) {
                    box.set({0, 1, 0}, in, half);
                    box.set({1, 0, 1}, in, half);
                } else {
                    box.set({0, 0, 0}, in, half);
                    box.set({1, 1, 1}, in, half);
                }
            }
    return box;
}

RationalBox rcbl_svetlichny_box() {
    RationalBox box(Scenario::uniform(3, 2, 2));
    const Rational half(1, 2);
    // Correlated a = c on four inputs, anti-correlated on the other four;
    // b = 0 throughout.
    const bool correlated[2][2][2] = {{{true, true}, {true, false}}, {{true, false}, {false, false}}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                const Tuple in{x, y, z};
                if (correlated[x][y][z]) {
                    box.set({0, 0, 0}, in, half);
                    box.set({1, 0, 1}, in, half);
                } else {
                    box.set({0, 0, 1}, in, half);
                    box.set({1, 0, 0}, in, half);
                }
            }
    return box;
}

}  // namespace rcbell
