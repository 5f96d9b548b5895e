#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rcbell/constructions.hpp"
#include "rcbell/functionals.hpp"

using namespace rcbell;

namespace {

// Correlator-arithmetic route, independent of the coefficient expansion.
Rational chsh_by_correlators(const RationalBox& box) {
    Rational v(0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const Rational c = box.correlator({x, y});
            v += (x == 1 && y == 1) ? -c : c;
        }
    return v;
}

RationalBox flip_all_outputs(const RationalBox& box) {
    const Scenario& scen = box.scenario();
    RationalBox out(scen);
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi)
        for (std::size_t ai = 0; ai < scen.output_count(); ++ai) {
            Tuple a = scen.output_tuple(ai);
            for (auto& bit : a) bit ^= 1;
            out.at(xi, scen.output_index(a)) = box.at(xi, ai);
        }
    return out;
}

}  // namespace

TEST_CASE("chsh: canonical values") {
    const Scenario two = Scenario::uniform(2, 2, 2);
    const BellFunctional f = chsh(two, 0, 1);
    CHECK(evaluate(f, pr_box()) == Rational(4));

    const auto both_zero =
        from_deterministic(two, DeterministicStrategy::local({{0, 0}, {0, 0}}));
    CHECK(evaluate(f, both_zero) == Rational(2));

    RationalBox anti_pr(two);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == ((x & y) ^ 1)) anti_pr.set({a, b}, {x, y}, Rational(1, 2));
    CHECK(evaluate(f, anti_pr) == Rational(-4));
}

TEST_CASE("chsh: coefficient expansion agrees with correlator arithmetic") {
    std::mt19937 rng(31);
    const Scenario two = Scenario::uniform(2, 2, 2);
    const BellFunctional f = chsh(two, 0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const RationalBox box = testing::random_rational_box(two, rng);
        CHECK(evaluate(f, box) == chsh_by_correlators(box));
    }
}

TEST_CASE("chained: term structure") {
    const BellFunctional f2 = chained(2);
    CHECK(f2.bounds.at("classical") == 1);
    CHECK(f2.bounds.at("polytope") == 0);
    // Perfectly correlated box: only the final term contributes.
    const Scenario two = Scenario::uniform(2, 2, 2);
    RationalBox corr(two);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            corr.set({0, 0}, {x, y}, Rational(1, 2));
            corr.set({1, 1}, {x, y}, Rational(1, 2));
        }
    CHECK(evaluate(f2, corr) == Rational(1));
    CHECK_THROWS_AS(chained(1), std::invalid_argument);
}

TEST_CASE("chained: nonnegative on every valid box") {
    std::mt19937 rng(37);
    for (int m = 2; m <= 4; ++m) {
        const BellFunctional f = chained(m);
        for (int trial = 0; trial < 15; ++trial) {
            const RationalBox box = testing::random_rational_box(f.scenario, rng);
            CHECK(evaluate(f, box) >= Rational(0));
        }
    }
}

TEST_CASE("svetlichny: explicit box reaches the algebraic value") {
    const BellFunctional f = svetlichny();
    CHECK(f.bounds.at("classical-bilocal") == 4);
    CHECK(f.bounds.at("algebraic") == 8);
    CHECK(evaluate(f, rcbl_svetlichny_box()) == Rational(8));
    // All-zero deterministic outputs: the eight signs cancel.
    const auto zeros = from_deterministic(
        f.scenario, DeterministicStrategy::local({{0, 0}, {0, 0}, {0, 0}}));
    CHECK(evaluate(f, zeros) == Rational(0));
}

TEST_CASE("svetlichny: two-path equality and global flip symmetry") {
    std::mt19937 rng(41);
    const BellFunctional f = svetlichny();
    const int sign[2][2][2] = {{{+1, +1}, {+1, -1}}, {{+1, -1}, {-1, -1}}};
    for (int trial = 0; trial < 20; ++trial) {
        const RationalBox box = testing::random_rational_box(f.scenario, rng);
        Rational by_corr(0);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) by_corr += Rational(sign[x][y][z]) * box.correlator({x, y, z});
        CHECK(evaluate(f, box) == by_corr);
        // Flipping every output of every party negates all odd correlators.
        CHECK(evaluate(f, flip_all_outputs(box)) == -evaluate(f, box));
    }
}

TEST_CASE("rcbl functional: bound annotation and deterministic evaluation") {
    const BellFunctional f = rcbl_functional();
    CHECK(f.bounds.at("rcbl") == 6);
    const auto zeros = from_deterministic(
        f.scenario, DeterministicStrategy::local({{0, 0}, {0, 0}, {0, 0}}));
    CHECK(evaluate(f, zeros) == Rational(6));
}

TEST_CASE("rcbl functional: two-path equality against pair and triple correlators") {
    std::mt19937 rng(43);
    const BellFunctional f = rcbl_functional();
    for (int trial = 0; trial < 20; ++trial) {
        const RationalBox box = testing::random_rational_box(f.scenario, rng);
        Rational by_corr(0);
        by_corr += Rational(2) * box.conditioned_pair_correlator(0, 1, 0, 0, {0});
        by_corr += box.conditioned_pair_correlator(0, 2, 0, 0, {0});
        by_corr += box.conditioned_pair_correlator(0, 2, 0, 0, {1});
        by_corr += Rational(2) * box.conditioned_pair_correlator(1, 2, 0, 1, {0});
        by_corr -= Rational(2) * box.correlator({1, 1, 0});
        by_corr += Rational(2) * box.correlator({1, 1, 1});
        CHECK(evaluate(f, box) == by_corr);
    }
}

TEST_CASE("hidden influence: all-zero deterministic box sums the signed terms") {
    const BellFunctional f = hidden_influence();
    CHECK(f.bounds.at("conditional-local") == 7);
    CHECK(f.requires_full_ns);
    const auto zeros = from_deterministic(
        f.scenario, DeterministicStrategy::local({{0, 0}, {0, 0}, {0, 0}, {0, 0}}));
    // Every correlator is +1, so the value is the coefficient sum.
    CHECK(evaluate(f, zeros) == Rational(-9));
}

TEST_CASE("mermin constraints: n = 3") {
    const auto cs = mermin_constraints(3);
    REQUIRE(cs.required.size() == 4);
    for (const auto& [x, sign] : cs.required) {
        const int weight = std::accumulate(x.begin(), x.end(), 0);
        if (weight == 3) CHECK(sign == 1);
        if (weight == 1) CHECK(sign == -1);
    }
    CHECK_THROWS_AS(mermin_constraints(4), std::invalid_argument);
    CHECK_THROWS_AS(mermin_constraints(1), std::invalid_argument);
}

TEST_CASE("mermin satisfied: example box realizes the sign-flipped family") {
    const RationalBox box = example_mermin_box();
    // The box's correlators are the exact negation of the constraint set
    // (its parity game is a+b+c = x*y*z, the mirrored extremal point), so the
    // set is satisfied after relabeling one party's outputs.
    for (const auto& [x, sign] : mermin_constraints(3).required)
        CHECK(box.correlator(x) == Rational(-sign));
    CHECK_FALSE(mermin_satisfied(box, 0.0));
    const Scenario& scen0 = box.scenario();
    RationalBox relabeled(scen0);
    for (std::size_t xi = 0; xi < scen0.input_count(); ++xi)
        for (std::size_t ai = 0; ai < scen0.output_count(); ++ai) {
            Tuple a = scen0.output_tuple(ai);
            a[0] ^= 1;
            relabeled.at(xi, scen0.output_index(a)) = box.at(xi, ai);
        }
    CHECK(mermin_satisfied(relabeled, 0.0));
    // The parity relation holds with certainty at every input, not just the
    // promise set.
    const Scenario& scen = box.scenario();
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi) {
        const Tuple x = scen.input_tuple(xi);
        Rational good(0);
        for (std::size_t ai = 0; ai < scen.output_count(); ++ai) {
            const Tuple a = scen.output_tuple(ai);
            if ((a[0] ^ a[1] ^ a[2]) == (x[0] & x[1] & x[2])) good += box.at(xi, ai);
        }
        CHECK(good == Rational(1));
    }
}

TEST_CASE("functional lookup covers the shipped names") {
    for (const auto& name : functional_names()) CHECK(functional_by_name(name).has_value());
    CHECK_FALSE(functional_by_name("no-such-inequality").has_value());
}
