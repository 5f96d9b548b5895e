#include <doctest.h>

#include "rcbell/constructions.hpp"
#include "rcbell/polytope.hpp"

using namespace rcbell;

TEST_CASE("polytope maximum: chsh over two-party no-signaling is 4") {
    const auto opt = maximize_over_polytope(chsh(Scenario::uniform(2, 2, 2), 0, 1),
                                            ConstraintRegime::full_ns());
    CHECK(opt.value == Rational(4));
    CHECK(check(opt.witness, ConstraintRegime::full_ns()).passes);
}

TEST_CASE("polytope maximum: chsh-sum monogamy under full NS, broken on the line") {
    const BellFunctional f = chsh_monogamy_sum();
    CHECK(maximize_over_polytope(f, ConstraintRegime::full_ns()).value == Rational(4));
    CHECK(maximize_over_polytope(f, ConstraintRegime::line_rc({0, 1, 2})).value == Rational(8));
}

TEST_CASE("polytope maximum: line regime dominates full NS for any functional") {
    for (const char* name : {"svetlichny", "rcbl"}) {
        const BellFunctional f = *functional_by_name(name);
        const auto ns = maximize_over_polytope(f, ConstraintRegime::full_ns());
        const auto rc = maximize_over_polytope(f, ConstraintRegime::line_rc({0, 1, 2}));
        CHECK(rc.value >= ns.value);
    }
}

TEST_CASE("polytope minimum: chained over no-signaling reaches 0") {
    for (int m : {2, 3}) {
        const auto opt = minimize_over_polytope(chained(m), ConstraintRegime::full_ns());
        CHECK(opt.value == Rational(0));
    }
}

TEST_CASE("rcbl maximize: the causal-bilocal bound of the shipped functional is 6") {
    const auto opt = rcbl_maximize(rcbl_functional());
    CHECK(opt.value == Rational(6));
    CHECK(evaluate(rcbl_functional(), opt.witness) == Rational(6));
}

TEST_CASE("rcbl maximize: svetlichny reaches 8 through the AC|B cut") {
    const auto opt = rcbl_maximize(svetlichny());
    CHECK(opt.value == Rational(8));
    CHECK(opt.family == "AC|B");
}

TEST_CASE("rcbl maximize: dominates any product member") {
    // PR between A and B times a deterministic C is inside every cut family.
    const Scenario one = Scenario::uniform(1, 2, 2);
    const auto det_c = from_deterministic(one, DeterministicStrategy::local({{0, 0}}));
    const auto member = product(pr_box(), det_c);
    for (const char* name : {"svetlichny", "rcbl"}) {
        const BellFunctional f = *functional_by_name(name);
        CHECK(rcbl_maximize(f).value >= evaluate(f, member));
    }
}

TEST_CASE("bl membership: product boxes are inside at distance zero") {
    const Scenario one = Scenario::uniform(1, 2, 2);
    const auto det_c = from_deterministic(one, DeterministicStrategy::local({{1, 0}}));
    const auto member = product(pr_box(), det_c);
    const auto res = bl_membership(member);
    CHECK(res.inside);
    CHECK(res.distance == Rational(0));
    Rational wsum(0);
    for (const auto& [label, w] : res.weights) {
        CHECK(w > Rational(0));
        wsum += w;
    }
    CHECK(wsum == Rational(1));
}

TEST_CASE("rcbl maximize: never exceeds the unconstrained simplex maximum") {
    // Over independent per-input distributions the maximum is the sum of the
    // largest coefficient of each input block.
    for (const char* name : {"svetlichny", "rcbl", "chsh-sum"}) {
        const BellFunctional f = *functional_by_name(name);
        const std::size_t na = f.scenario.output_count();
        Rational algebraic(0);
        for (std::size_t xi = 0; xi < f.scenario.input_count(); ++xi) {
            Rational best = f.coeffs[xi * na];
            for (std::size_t ai = 1; ai < na; ++ai) best = std::max(best, f.coeffs[xi * na + ai]);
            algebraic += best;
        }
        CHECK(rcbl_maximize(f).value <= algebraic);
    }
}

TEST_CASE("evaluate: the zero functional vanishes everywhere") {
    const BellFunctional zero(Scenario::uniform(3, 2, 2), "zero");
    CHECK(evaluate(zero, monogamy_box()) == Rational(0));
}

TEST_CASE("bl membership: mixtures of hull vertices sit at distance zero") {
    // A handful of deterministic product boxes across the three cuts.
    const Scenario one = Scenario::uniform(1, 2, 2);
    const Scenario two = Scenario::uniform(2, 2, 2);
    auto pair_det = [&](int fa, int fb) {
        std::vector<Tuple> outs;
        for (std::size_t xi = 0; xi < two.input_count(); ++xi) {
            const Tuple x = two.input_tuple(xi);
            const int cell = x[0] * 2 + x[1];
            outs.push_back({(fa >> cell) & 1, (fb >> cell) & 1});
        }
        return from_deterministic(two, DeterministicStrategy::joint(outs));
    };
    auto lone_det = [&](int h) {
        return from_deterministic(one, DeterministicStrategy::local({{h & 1, (h >> 1) & 1}}));
    };
    const auto v1 = product(pair_det(6, 9), lone_det(1));               // AB|C
    const auto v2 = product(lone_det(2), pair_det(12, 3), {1, 0, 1});   // AC|B (B in the middle)
    const auto v3 = product(lone_det(0), pair_det(5, 10), {0, 1, 1});   // BC|A
    const auto mixed = mix<Rational>(
        {{Rational(1, 2), v1}, {Rational(1, 3), v2}, {Rational(1, 6), v3}});
    const auto res = bl_membership(mixed);
    CHECK(res.inside);
    CHECK(res.distance == Rational(0));
}

TEST_CASE("bl membership: the algebraic svetlichny box is outside") {
    const auto res = bl_membership(rcbl_svetlichny_box());
    CHECK_FALSE(res.inside);
    // Svetlichny <= 4 on the hull while the box reaches 8, so the distance is
    // at least (8 - 4) / 64.
    CHECK(res.distance >= Rational(1, 16));
}
