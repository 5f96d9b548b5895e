#pragma once

#include <vector>

#include "rcbell/constraints.hpp"

namespace rcbell {

/// A measurement event at (t, r) in a fixed inertial frame, spatial dimension
/// 1..3. Units take c = 1 unless a model overrides it.
struct SpacetimeEvent {
    double t = 0.0;
    std::vector<double> r;
    int dim() const { return static_cast<int>(r.size()); }
};

/// Superluminal point-to-region influence at speed u > c.
struct InfluenceModel {
    double u;
    double c;
    explicit InfluenceModel(double speed, double light = 1.0) : u(speed), c(light) {
        if (!(c > 0.0) || !(u > c)) throw std::invalid_argument("influence model: requires u > c > 0");
    }
    double alpha() const { return c / u; }
};

/// Interval test |dr|^2 - c^2 dt^2 > 0 (strictly spacelike; lightlike is false).
bool is_spacelike(const SpacetimeEvent& e1, const SpacetimeEvent& e2, double c = 1.0);

/// Segment angle pi - 2*asin(alpha) for alpha in (0, 1].
double phi_alpha(double alpha);

/// Whether E sits in the region from which it can influence the AB
/// correlations without enabling signaling: the angle at E subtended by A and
/// B reaches phi_alpha and E is early enough for the influence to arrive
/// (boundaries count as inside). In one spatial dimension the angular test
/// degenerates to "E strictly between A and B".
bool e_region_contains(const SpacetimeEvent& a, const SpacetimeEvent& b, const SpacetimeEvent& e,
                       const InfluenceModel& model);

/// Single-relay signal test: an influence E -> A at speed u followed by a
/// light signal A -> S outruns the direct light signal E -> S iff
/// alpha*|EA| + |AS| < |ES| (strict).
bool can_signal_via(const SpacetimeEvent& e, const SpacetimeEvent& a, const std::vector<double>& s_point,
                    const InfluenceModel& model);

/// Whether some S receives the relayed signal through both A and B; closed
/// form: angle(A, E, B) < phi_alpha strictly (tangency means no interior).
bool dual_signal_possible(const SpacetimeEvent& e, const SpacetimeEvent& a, const SpacetimeEvent& b,
                          const InfluenceModel& model);

struct SampledSearchOptions {
    int coarse_angles = 2048;
    int refine_steps = 200;
    double radius_scale = 1e8;
};

/// Sampled-search oracle for dual_signal_possible: sweeps candidate S points
/// over directions from E (far radius; the relay condition is monotone in the
/// radius along a fixed direction) and confirms any hit through
/// can_signal_via toward both A and B.
bool dual_signal_possible_sampled(const SpacetimeEvent& e, const SpacetimeEvent& a, const SpacetimeEvent& b,
                                  const InfluenceModel& model, const SampledSearchOptions& opts = {});

/// 1+1D three-event classification: if the apex of the intersection of the
/// outer pair's future light cones lies inside the middle event's future
/// light cone, the contiguous family {A},{B},{C},{AB},{BC} (party order as
/// passed) is sufficient; otherwise the full no-signaling family is required.
ConstraintRegime classify_three_party_1p1(const SpacetimeEvent& a, const SpacetimeEvent& b,
                                          const SpacetimeEvent& c_event, const InfluenceModel& model);

struct EscapeSearchOptions {
    int per_axis_3d = 64;  // 1d/2d grids scale up to a comparable budget
    int refinement_passes = 2;
    int refine_factor = 4;
    int refine_seeds = 8;
    double inflate = 3.0;
    double epsilon = 1e-9;
};

/// Whether the future light cones of `subset` intersect somewhere outside the
/// future light cone of party `excluded`: minimizes
///   g(r) = max_{i in subset}(t_i + |r - r_i|/c) - (t_j + |r - r_j|/c)
/// over an inflated bounding box by coarse-to-fine grid search; true iff the
/// best value falls below -epsilon.
bool subset_escapes(const std::vector<SpacetimeEvent>& events, const std::vector<int>& subset, int excluded,
                    double c = 1.0, const EscapeSearchOptions& opts = {});

}  // namespace rcbell
