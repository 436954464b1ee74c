#pragma once

#include <vector>

#include "beurlab/common.hpp"
#include "beurlab/plane_domain.hpp"

namespace beurlab {

/// Angular arc [a, b] (b >= a, within one period after normalization).
struct Arc {
    double a = 0.0;
    double b = 0.0;
};

using ArcSet = std::vector<Arc>;

/// {theta : center + rho e^{i theta} in Omega} as a disjoint arc set.
/// Crossings with polyline boundaries are solved in closed form per segment;
/// arcs are classified by a membership test at their midpoints.
ArcSet arcs_inside(const PlaneDomain& domain, cplx center, double rho);

/// Integral of e^{-i k theta} over the arcs (closed form per arc).
cplx arc_exponential(const ArcSet& arcs, int k);

/// Sum of arc lengths.
double arc_measure(const ArcSet& arcs);

/// Radii where the circle family around `center` can change its crossing
/// pattern: vertex distances plus interior-foot distances per edge (sorted,
/// deduplicated). Half-planes and disks yield their tangency radii.
std::vector<double> radial_events(const PlaneDomain& domain, cplx center);

/// Beyond this radius the circle no longer meets the (bounded) domain; for
/// half-planes and graphs this is +inf.
double radial_reach(const PlaneDomain& domain, cplx center);

}  // namespace beurlab
