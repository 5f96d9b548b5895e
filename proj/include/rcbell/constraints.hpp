#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rcbell/box.hpp"
#include "rcbell/scenario.hpp"

namespace rcbell {

/// A marginal-equality constraint: for every (a_S, x_S) over the protected
/// subset S, the marginal over the complement's outputs is the same for all
/// complement inputs.
struct MarginalConstraint {
    std::vector<int> subset;  // ascending party indices, non-empty
};

/// Which marginals a box must keep input-independent.
///   full_ns : every non-empty proper subset of parties.
///   line_rc : every contiguous run (sizes 1..n-1) of a party ordering; the
///             full run is vacuously protected and not emitted.
///   custom  : an explicit subset list.
class ConstraintRegime {
  public:
    enum class Kind { full_ns, line_rc, custom };

    static ConstraintRegime full_ns() { return ConstraintRegime(Kind::full_ns, {}, {}); }
    static ConstraintRegime line_rc(std::vector<int> order) {
        return ConstraintRegime(Kind::line_rc, std::move(order), {});
    }
    static ConstraintRegime custom(std::vector<std::vector<int>> subsets) {
        return ConstraintRegime(Kind::custom, {}, std::move(subsets));
    }

    Kind kind() const { return kind_; }
    const std::vector<int>& order() const { return order_; }
    const std::vector<std::vector<int>>& custom_subsets() const { return subsets_; }

    /// Expands the regime into its constraint list for a scenario.
    /// Throws std::invalid_argument on a regime/scenario mismatch.
    std::vector<MarginalConstraint> protected_subsets(const Scenario& scenario) const;

    bool operator==(const ConstraintRegime& o) const {
        return kind_ == o.kind_ && order_ == o.order_ && subsets_ == o.subsets_;
    }

  private:
    ConstraintRegime(Kind kind, std::vector<int> order, std::vector<std::vector<int>> subsets)
        : kind_(kind), order_(std::move(order)), subsets_(std::move(subsets)) {}

    Kind kind_;
    std::vector<int> order_;
    std::vector<std::vector<int>> subsets_;
};

/// All non-empty proper subsets, ordered by size then lexicographically.
/// Count is 2^n - 2 (empty for n = 1).
std::vector<MarginalConstraint> ns_constraints(const Scenario& scenario);

/// Contiguous runs of `order` with sizes 1..n-1, ordered by size then start.
/// Count is (n^2 + n - 2) / 2.
std::vector<MarginalConstraint> rc_line_constraints(const Scenario& scenario, const std::vector<int>& order);

/// The three-party line regime's protected family {A},{B},{C},{AB},{BC} for an
/// arbitrary ordered triple.
std::vector<std::vector<int>> three_party_line_subsets(int a, int b, int c);

template <class S>
struct ConstraintViolation {
    std::vector<int> subset;
    Tuple a_subset;
    Tuple x_subset;
    Tuple x_complement;
    Tuple x_complement_ref;
    S discrepancy;  // marginal(x_complement) - marginal(reference)
};

template <class S>
struct CheckReport {
    bool passes = true;
    std::vector<ConstraintViolation<S>> violations;
};

/// Checks every protected marginal against the all-zeros reference complement
/// input. Exact for Rational tables, |discrepancy| <= tol for float tables.
/// One table pass per constraint: marginals are bucketed by
/// (subset input, complement input, subset output) and compared blockwise.
template <class S>
CheckReport<S> check(const Box<S>& box, const ConstraintRegime& regime, double tol = 1e-9) {
    const Scenario& scen = box.scenario();
    const int n = scen.parties();
    const std::size_t nx = scen.input_count(), na = scen.output_count();
    CheckReport<S> report;

    for (const MarginalConstraint& c : regime.protected_subsets(scen)) {
        const std::vector<int> comp = complement_of(c.subset, n);
        if (comp.empty()) continue;  // full set: nothing to compare
        std::vector<int> in_s, out_s, in_c;
        std::size_t ns_in = 1, nc_in = 1, ns_out = 1;
        for (int p : c.subset) {
            in_s.push_back(scen.inputs_of(p));
            out_s.push_back(scen.outputs_of(p));
            ns_in *= scen.inputs_of(p);
            ns_out *= scen.outputs_of(p);
        }
        for (int p : comp) {
            in_c.push_back(scen.inputs_of(p));
            nc_in *= scen.inputs_of(p);
        }

        // Split indices of every full input / output along subset/complement.
        std::vector<std::size_t> xs_of(nx), xc_of(nx), as_of(na);
        {
            Tuple x(n, 0);
            std::size_t xi = 0;
            do {
                std::size_t xs = 0, xc = 0;
                for (std::size_t k = 0; k < c.subset.size(); ++k)
                    xs = xs * in_s[k] + static_cast<std::size_t>(x[c.subset[k]]);
                for (std::size_t k = 0; k < comp.size(); ++k)
                    xc = xc * in_c[k] + static_cast<std::size_t>(x[comp[k]]);
                xs_of[xi] = xs;
                xc_of[xi] = xc;
                ++xi;
            } while (next_tuple(x, scen.inputs()));
            Tuple a(n, 0);
            std::size_t ai = 0;
            do {
                std::size_t as = 0;
                for (std::size_t k = 0; k < c.subset.size(); ++k)
                    as = as * out_s[k] + static_cast<std::size_t>(a[c.subset[k]]);
                as_of[ai] = as;
                ++ai;
            } while (next_tuple(a, scen.outputs()));
        }

        std::vector<S> buckets(ns_in * nc_in * ns_out, S(0));
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const std::size_t base = (xs_of[xi] * nc_in + xc_of[xi]) * ns_out;
            for (std::size_t ai = 0; ai < na; ++ai) {
                const S& v = box.at(xi, ai);
                if (scalar_kind<S>::is_zero(v)) continue;
                buckets[base + as_of[ai]] += v;
            }
        }

        auto decode = [](std::size_t idx, const std::vector<int>& radices) {
            Tuple t(radices.size(), 0);
            for (std::size_t k = radices.size(); k-- > 0;) {
                t[k] = static_cast<int>(idx % radices[k]);
                idx /= radices[k];
            }
            return t;
        };
        for (std::size_t xs = 0; xs < ns_in; ++xs)
            for (std::size_t xc = 1; xc < nc_in; ++xc)
                for (std::size_t as = 0; as < ns_out; ++as) {
                    const S diff = buckets[(xs * nc_in + xc) * ns_out + as] -
                                   buckets[(xs * nc_in + 0) * ns_out + as];
                    if (!scalar_kind<S>::eq(diff, S(0), tol)) {
                        report.passes = false;
                        report.violations.push_back({c.subset, decode(as, out_s), decode(xs, in_s),
                                                     decode(xc, in_c), Tuple(comp.size(), 0), diff});
                    }
                }
    }
    std::sort(report.violations.begin(), report.violations.end(), [](const auto& u, const auto& v) {
        return std::tie(u.subset, u.x_subset, u.a_subset, u.x_complement) <
               std::tie(v.subset, v.x_subset, v.a_subset, v.x_complement);
    });
    return report;
}

/// Redundancy cross-check for line regimes: every single-party marginal must
/// be independent of all other parties' inputs (implied by the run family).
template <class S>
bool derived_marginal_consistency(const Box<S>& box, const ConstraintRegime& regime, double tol = 1e-9) {
    if (regime.kind() != ConstraintRegime::Kind::line_rc)
        throw std::invalid_argument("derived_marginal_consistency: regime must be line_rc");
    const Scenario& scen = box.scenario();
    std::vector<std::vector<int>> singles;
    for (int p = 0; p < scen.parties(); ++p) singles.push_back({p});
    return check(box, ConstraintRegime::custom(singles), tol).passes;
}

}  // namespace rcbell
