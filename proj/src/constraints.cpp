#include "rcbell/constraints.hpp"

#include <set>

namespace rcbell {

namespace {

void sort_by_size_then_lex(std::vector<MarginalConstraint>& list) {
    std::sort(list.begin(), list.end(), [](const MarginalConstraint& u, const MarginalConstraint& v) {
        if (u.subset.size() != v.subset.size()) return u.subset.size() < v.subset.size();
        return u.subset < v.subset;
    });
}

}  // namespace

std::vector<MarginalConstraint> ns_constraints(const Scenario& scenario) {
    const int n = scenario.parties();
    std::vector<MarginalConstraint> list;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int p = 0; p < n; ++p)
            if (mask & (1u << p)) subset.push_back(p);
        list.push_back({std::move(subset)});
    }
    sort_by_size_then_lex(list);
    return list;
}

std::vector<MarginalConstraint> rc_line_constraints(const Scenario& scenario, const std::vector<int>& order) {
    const int n = scenario.parties();
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("rc_line: order length mismatch");
    std::vector<bool> seen(n, false);
    for (int p : order) {
        if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("rc_line: order must be a permutation");
        seen[p] = true;
    }
    std::vector<MarginalConstraint> list;
    for (int k = 1; k <= n - 1; ++k)
        for (int start = 0; start + k <= n; ++start) {
            std::vector<int> subset(order.begin() + start, order.begin() + start + k);
            std::sort(subset.begin(), subset.end());
            list.push_back({std::move(subset)});
        }
    sort_by_size_then_lex(list);
    return list;
}

std::vector<std::vector<int>> three_party_line_subsets(int a, int b, int c) {
    std::vector<int> ab{a, b}, bc{b, c};
    std::sort(ab.begin(), ab.end());
    std::sort(bc.begin(), bc.end());
    return {{a}, {b}, {c}, ab, bc};
}

std::vector<MarginalConstraint> ConstraintRegime::protected_subsets(const Scenario& scenario) const {
    const int n = scenario.parties();
    switch (kind_) {
        case Kind::full_ns:
            return ns_constraints(scenario);
        case Kind::line_rc:
            return rc_line_constraints(scenario, order_);
        case Kind::custom: {
            std::vector<MarginalConstraint> list;
            std::set<std::vector<int>> distinct;
            for (const auto& s : subsets_) {
                if (s.empty()) throw std::invalid_argument("custom regime: empty subset");
                std::vector<int> subset = s;
                std::sort(subset.begin(), subset.end());
                for (std::size_t i = 0; i < subset.size(); ++i) {
                    if (subset[i] < 0 || subset[i] >= n)
                        throw std::invalid_argument("custom regime: party index out of range");
                    if (i > 0 && subset[i] == subset[i - 1])
                        throw std::invalid_argument("custom regime: duplicate party in subset");
                }
                if (!distinct.insert(subset).second)
                    throw std::invalid_argument("custom regime: duplicate subset");
                list.push_back({std::move(subset)});
            }
            sort_by_size_then_lex(list);
            return list;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace rcbell
