#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rcbell/constraints.hpp"
#include "rcbell/constructions.hpp"

using namespace rcbell;

TEST_CASE("ns constraints: subset counts match the closed form") {
    CHECK(ns_constraints(Scenario::uniform(1, 2, 2)).empty());
    const auto two = ns_constraints(Scenario::uniform(2, 2, 2));
    REQUIRE(two.size() == 2);
    CHECK(two[0].subset == std::vector<int>{0});
    CHECK(two[1].subset == std::vector<int>{1});
    CHECK(ns_constraints(Scenario::uniform(3, 2, 2)).size() == 6);
    CHECK(ns_constraints(Scenario::uniform(5, 2, 2)).size() == 30);
}

TEST_CASE("rc line constraints: contiguous runs only") {
    const auto list = rc_line_constraints(Scenario::uniform(3, 2, 2), {0, 1, 2});
    REQUIRE(list.size() == 5);  // (9 + 3 - 2) / 2
    std::vector<std::vector<int>> subsets;
    for (const auto& c : list) subsets.push_back(c.subset);
    CHECK(std::find(subsets.begin(), subsets.end(), std::vector<int>{0, 2}) == subsets.end());
    CHECK(std::find(subsets.begin(), subsets.end(), std::vector<int>{0, 1}) != subsets.end());
    CHECK(std::find(subsets.begin(), subsets.end(), std::vector<int>{1, 2}) != subsets.end());
    CHECK(rc_line_constraints(Scenario::uniform(4, 2, 2), {0, 1, 2, 3}).size() == 9);
    for (int n = 2; n <= 7; ++n) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        CHECK(rc_line_constraints(Scenario::uniform(n, 2, 2), order).size() ==
              static_cast<std::size_t>((n * n + n - 2) / 2));
    }
}

TEST_CASE("rc line constraints: reversed order yields the same family") {
    const Scenario scen = Scenario::uniform(4, 2, 2);
    auto fwd = rc_line_constraints(scen, {0, 1, 2, 3});
    auto rev = rc_line_constraints(scen, {3, 2, 1, 0});
    auto key = [](const std::vector<MarginalConstraint>& v) {
        std::vector<std::vector<int>> out;
        for (const auto& c : v) out.push_back(c.subset);
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(key(fwd) == key(rev));
}

TEST_CASE("check: example box passes the line regime but not full NS") {
    const RationalBox box = example_mermin_box();
    CHECK(check(box, ConstraintRegime::line_rc({0, 1, 2})).passes);
    const auto rep = check(box, ConstraintRegime::full_ns());
    CHECK_FALSE(rep.passes);
    bool on_ac = false;
    for (const auto& v : rep.violations) on_ac |= v.subset == std::vector<int>{0, 2};
    CHECK(on_ac);
    // Every reported violation sits on the one unprotected pair.
    for (const auto& v : rep.violations) CHECK(v.subset == std::vector<int>{0, 2});
}

TEST_CASE("check: pr box satisfies full NS") {
    CHECK(check(pr_box(), ConstraintRegime::full_ns()).passes);
}

TEST_CASE("check: two-party full NS and line regimes coincide") {
    std::mt19937 rng(23);
    const Scenario scen = Scenario::uniform(2, 2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        RationalBox box = testing::random_rational_box(scen, rng);
        const bool ns = check(box, ConstraintRegime::full_ns()).passes;
        const bool rc = check(box, ConstraintRegime::line_rc({0, 1})).passes;
        CHECK(ns == rc);
    }
}

TEST_CASE("check: full NS implies every line regime") {
    std::mt19937 rng(29);
    const Scenario scen = Scenario::uniform(3, 2, 2);
    const std::vector<std::vector<int>> orders{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}, {2, 1, 0}};
    for (int trial = 0; trial < 25; ++trial) {
        const RationalBox box = testing::random_local_mixture(scen, rng);
        REQUIRE(check(box, ConstraintRegime::full_ns()).passes);
        for (const auto& order : orders) CHECK(check(box, ConstraintRegime::line_rc(order)).passes);
    }
}

TEST_CASE("check: regime/scenario mismatch throws") {
    CHECK_THROWS_AS(check(pr_box(), ConstraintRegime::line_rc({0, 1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(check(pr_box(), ConstraintRegime::custom({{0, 5}})), std::invalid_argument);
}

TEST_CASE("derived marginal consistency") {
    CHECK(derived_marginal_consistency(monogamy_box(), ConstraintRegime::line_rc({0, 1, 2})));
    CHECK(derived_marginal_consistency(example_mermin_box(), ConstraintRegime::line_rc({0, 1, 2})));

    // A table whose middle output copies the first party's input signals.
    const Scenario scen = Scenario::uniform(3, 2, 2);
    RationalBox signaling(scen);
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi) {
        const Tuple x = scen.input_tuple(xi);
        signaling.at(xi, scen.output_index({0, x[0], 0})) = 1;
    }
    REQUIRE(signaling.validate().passes);
    CHECK_FALSE(derived_marginal_consistency(signaling, ConstraintRegime::line_rc({0, 1, 2})));
    CHECK_THROWS_AS(derived_marginal_consistency(signaling, ConstraintRegime::full_ns()),
                    std::invalid_argument);
}

TEST_CASE("check report: violations are deterministically ordered") {
    const auto rep = check(example_mermin_box(), ConstraintRegime::full_ns());
    for (std::size_t i = 1; i < rep.violations.size(); ++i) {
        const auto& u = rep.violations[i - 1];
        const auto& v = rep.violations[i];
        CHECK(std::tie(u.subset, u.x_subset, u.a_subset, u.x_complement) <=
              std::tie(v.subset, v.x_subset, v.a_subset, v.x_complement));
    }
}
