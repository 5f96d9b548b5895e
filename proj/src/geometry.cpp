#include "rcbell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rcbell {

namespace {

void require_same_dim(const SpacetimeEvent& a, const SpacetimeEvent& b) {
    if (a.dim() != b.dim() || a.dim() < 1 || a.dim() > 3)
        throw std::invalid_argument("events must share one spatial dimension in {1,2,3}");
}

long double dist_l(const std::vector<double>& u, const std::vector<double>& v) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const long double d = static_cast<long double>(u[i]) - static_cast<long double>(v[i]);
        s += d * d;
    }
    return sqrtl(s);
}

double dist(const std::vector<double>& u, const std::vector<double>& v) {
    return static_cast<double>(dist_l(u, v));
}

/// Angle at vertex `e` subtended by points `a` and `b`.
double angle_at(const std::vector<double>& a, const std::vector<double>& e, const std::vector<double>& b) {
    const double la = dist(a, e), lb = dist(b, e);
    if (la == 0.0 || lb == 0.0)
        throw std::invalid_argument("angle undefined: point coincides with the vertex");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += (a[i] - e[i]) * (b[i] - e[i]);
    const double c = std::clamp(dot / (la * lb), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

bool is_spacelike(const SpacetimeEvent& e1, const SpacetimeEvent& e2, double c) {
    require_same_dim(e1, e2);
    const double dr = dist(e1.r, e2.r);
    const double dt = e1.t - e2.t;
    return dr * dr - c * c * dt * dt > 0.0;
}

double phi_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("phi_alpha: alpha must be in (0, 1]");
    return std::numbers::pi - 2.0 * std::asin(alpha);
}

bool e_region_contains(const SpacetimeEvent& a, const SpacetimeEvent& b, const SpacetimeEvent& e,
                       const InfluenceModel& model) {
    require_same_dim(a, b);
    require_same_dim(a, e);
    const double ea = dist(e.r, a.r), eb = dist(e.r, b.r);
    if (ea == 0.0 || eb == 0.0) throw std::invalid_argument("e_region: E coincides with A or B");
    bool spatial_ok;
    if (a.dim() == 1) {
        spatial_ok = (a.r[0] < e.r[0]) != (b.r[0] < e.r[0]);  // strictly between
    } else {
        spatial_ok = angle_at(a.r, e.r, b.r) >= phi_alpha(model.alpha());
    }
    if (!spatial_ok) return false;
    const double latest = std::min(a.t - ea / model.u, b.t - eb / model.u);
    return e.t <= latest;
}

namespace {

bool can_signal_via_alpha(const std::vector<double>& e, const std::vector<double>& a,
                          const std::vector<double>& s, double alpha) {
    return static_cast<long double>(alpha) * dist_l(e, a) + dist_l(a, s) < dist_l(e, s);
}

}  // namespace

bool can_signal_via(const SpacetimeEvent& e, const SpacetimeEvent& a, const std::vector<double>& s_point,
                    const InfluenceModel& model) {
    require_same_dim(e, a);
    if (s_point.size() != e.r.size()) throw std::invalid_argument("can_signal_via: dimension mismatch");
    return can_signal_via_alpha(e.r, a.r, s_point, model.alpha());
}

bool dual_signal_possible(const SpacetimeEvent& e, const SpacetimeEvent& a, const SpacetimeEvent& b,
                          const InfluenceModel& model) {
    require_same_dim(a, b);
    require_same_dim(a, e);
    if (dist(e.r, a.r) == 0.0 || dist(e.r, b.r) == 0.0)
        throw std::invalid_argument("dual signal: E coincides with A or B");
    double angle;
    if (a.dim() == 1)
        angle = (a.r[0] < e.r[0]) != (b.r[0] < e.r[0]) ? std::numbers::pi : 0.0;
    else
        angle = angle_at(a.r, e.r, b.r);
    return angle < phi_alpha(model.alpha());
}

bool dual_signal_possible_sampled(const SpacetimeEvent& e, const SpacetimeEvent& a, const SpacetimeEvent& b,
                                  const InfluenceModel& model, const SampledSearchOptions& opts) {
    require_same_dim(a, b);
    require_same_dim(a, e);
    const int d = e.dim();
    const double la = dist(e.r, a.r), lb = dist(e.r, b.r);
    if (la == 0.0 || lb == 0.0) throw std::invalid_argument("dual signal: E coincides with A or B");
    const double radius = opts.radius_scale * (std::max(la, lb) + 1.0);

    // Candidate directions live in the plane spanned by (A-E) and (B-E);
    // off-plane directions only lose margin against both targets.
    std::vector<double> e1(d, 0.0), e2(d, 0.0);
    for (int i = 0; i < d; ++i) e1[i] = (a.r[i] - e.r[i]) / la;
    double proj = 0.0;
    for (int i = 0; i < d; ++i) proj += (b.r[i] - e.r[i]) * e1[i];
    double l2 = 0.0;
    for (int i = 0; i < d; ++i) {
        e2[i] = (b.r[i] - e.r[i]) - proj * e1[i];
        l2 += e2[i] * e2[i];
    }
    l2 = std::sqrt(l2);
    if (l2 > 0.0)
        for (int i = 0; i < d; ++i) e2[i] /= l2;
    else if (d >= 2) {
        // Collinear configuration: any perpendicular completes the plane.
        int k = 0;
        for (int i = 1; i < d; ++i)
            if (std::abs(e1[i]) < std::abs(e1[k])) k = i;
        e2.assign(d, 0.0);
        e2[k] = 1.0;
        proj = 0.0;
        for (int i = 0; i < d; ++i) proj += e2[i] * e1[i];
        l2 = 0.0;
        for (int i = 0; i < d; ++i) {
            e2[i] -= proj * e1[i];
            l2 += e2[i] * e2[i];
        }
        l2 = std::sqrt(l2);
        for (int i = 0; i < d; ++i) e2[i] /= l2;
    }

    const long double alpha = model.alpha();
    auto margin = [&](long double theta) {
        std::vector<double> s(e.r);
        for (int i = 0; i < d; ++i)
            s[i] += radius * (static_cast<double>(cosl(theta)) * e1[i] +
                              (d >= 2 ? static_cast<double>(sinl(theta)) * e2[i] : 0.0));
        const long double ma = dist_l(e.r, s) - dist_l(a.r, s) - alpha * dist_l(e.r, a.r);
        const long double mb = dist_l(e.r, s) - dist_l(b.r, s) - alpha * dist_l(e.r, b.r);
        return std::pair<long double, std::vector<double>>(std::min(ma, mb), std::move(s));
    };

    long double best_theta = 0.0L, best_margin = -1e30L;
    const int sweeps = d == 1 ? 2 : opts.coarse_angles;
    for (int k = 0; k < sweeps; ++k) {
        const long double theta = 2.0L * std::numbers::pi_v<long double> * k / sweeps;
        const auto [m, s] = margin(theta);
        if (m > best_margin) {
            best_margin = m;
            best_theta = theta;
        }
    }
    if (d >= 2) {
        // Ternary-search refinement of the angular margin around the best cell.
        const long double step = 2.0L * std::numbers::pi_v<long double> / sweeps;
        long double lo = best_theta - step, hi = best_theta + step;
        for (int it = 0; it < opts.refine_steps; ++it) {
            const long double m1 = lo + (hi - lo) / 3.0L, m2 = hi - (hi - lo) / 3.0L;
            if (margin(m1).first < margin(m2).first)
                lo = m1;
            else
                hi = m2;
        }
        const long double mid = (lo + hi) / 2.0L;
        if (margin(mid).first > best_margin) best_theta = mid;
    }
    const std::vector<double> candidate = margin(best_theta).second;
    return can_signal_via(e, a, candidate, model) && can_signal_via(e, b, candidate, model);
}

ConstraintRegime classify_three_party_1p1(const SpacetimeEvent& a, const SpacetimeEvent& b,
                                          const SpacetimeEvent& c_event, const InfluenceModel& model) {
    if (a.dim() != 1 || b.dim() != 1 || c_event.dim() != 1)
        throw std::invalid_argument("classify: requires one spatial dimension");
    double ta = a.t, ra = a.r[0];
    double tc = c_event.t, rc = c_event.r[0];
    if (ra == rc) throw std::invalid_argument("classify: outer events must have distinct positions");
    if (ra > rc) {
        std::swap(ta, tc);
        std::swap(ra, rc);
    }
    const double c = model.c;
    // Apex of the intersection of the outer future light cones.
    const double t_apex = (ta + tc) / 2.0 + (rc - ra) / (2.0 * c);
    const double r_apex = (ra + rc) / 2.0 + c * (tc - ta) / 2.0;
    const bool inside = std::abs(r_apex - b.r[0]) <= c * (t_apex - b.t);
    if (!inside) return ConstraintRegime::full_ns();
    return ConstraintRegime::custom(three_party_line_subsets(0, 1, 2));
}

bool subset_escapes(const std::vector<SpacetimeEvent>& events, const std::vector<int>& subset, int excluded,
                    double c, const EscapeSearchOptions& opts) {
    if (subset.empty()) throw std::invalid_argument("subset_escapes: empty subset");
    const int n = static_cast<int>(events.size());
    if (excluded < 0 || excluded >= n) throw std::out_of_range("subset_escapes: excluded index");
    for (int i : subset) {
        if (i < 0 || i >= n) throw std::out_of_range("subset_escapes: subset index");
        if (i == excluded) return false;  // a cone never escapes itself
    }
    const int d = events[0].dim();
    for (const auto& ev : events) require_same_dim(events[0], ev);

    std::vector<const SpacetimeEvent*> involved;
    for (int i : subset) involved.push_back(&events[i]);
    involved.push_back(&events[excluded]);

    std::vector<double> lo(d, 0.0), hi(d, 0.0);
    for (int k = 0; k < d; ++k) {
        lo[k] = hi[k] = involved[0]->r[k];
        for (const auto* ev : involved) {
            lo[k] = std::min(lo[k], ev->r[k]);
            hi[k] = std::max(hi[k], ev->r[k]);
        }
    }
    double max_pair = 0.0;
    for (std::size_t i = 0; i < involved.size(); ++i)
        for (std::size_t j = i + 1; j < involved.size(); ++j)
            max_pair = std::max(max_pair, dist(involved[i]->r, involved[j]->r));
    const double pad = opts.inflate * std::max(max_pair, 1e-6);
    for (int k = 0; k < d; ++k) {
        lo[k] -= pad;
        hi[k] += pad;
    }

    auto g = [&](const std::vector<double>& r) {
        double worst = -1e300;
        for (int i : subset) worst = std::max(worst, events[i].t + dist(r, events[i].r) / c);
        return worst - (events[excluded].t + dist(r, events[excluded].r) / c);
    };

    int per_axis = opts.per_axis_3d;
    if (d == 2) per_axis = opts.per_axis_3d * 4;
    if (d == 1) per_axis = opts.per_axis_3d * 64;

    struct Seed {
        double value;
        std::vector<double> point;
    };
    std::vector<Seed> seeds;
    double best = 1e300;
    std::vector<double> spacing(d);

    auto scan_box = [&](const std::vector<double>& blo, const std::vector<double>& bhi, int cells) {
        std::vector<double> point(d);
        for (int k = 0; k < d; ++k) spacing[k] = (bhi[k] - blo[k]) / std::max(cells - 1, 1);
        const std::vector<int> radices(d, cells);
        Tuple it(d, 0);
        do {
            for (int k = 0; k < d; ++k) point[k] = blo[k] + spacing[k] * it[k];
            const double v = g(point);
            best = std::min(best, v);
            if (static_cast<int>(seeds.size()) < opts.refine_seeds) {
                seeds.push_back({v, point});
                std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.value < y.value; });
            } else if (v < seeds.back().value) {
                seeds.back() = {v, point};
                std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.value < y.value; });
            }
        } while (next_tuple(it, radices));
    };

    scan_box(lo, hi, per_axis);
    for (int pass = 0; pass < opts.refinement_passes; ++pass) {
        const std::vector<Seed> current = seeds;
        const std::vector<double> cell = spacing;
        for (const Seed& s : current) {
            std::vector<double> blo(d), bhi(d);
            for (int k = 0; k < d; ++k) {
                blo[k] = s.point[k] - 2.0 * cell[k];
                bhi[k] = s.point[k] + 2.0 * cell[k];
            }
            scan_box(blo, bhi, 4 * opts.refine_factor + 1);
        }
    }
    return best < -opts.epsilon;
}

}  // namespace rcbell
