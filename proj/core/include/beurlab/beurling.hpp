#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "beurlab/annulus.hpp"
#include "beurlab/boundary_eval.hpp"
#include "beurlab/common.hpp"
#include "beurlab/plane_domain.hpp"

namespace beurlab {

/// Interior evaluation point with its cached boundary distance.
struct EvalPoint {
    cplx z;
    double dist = 0.0;
    int host_cube = -1;
};

/// B(chi_Omega)(z) by principal-value area quadrature in polar coordinates
/// around z: full annuli cancel exactly, partial annuli are integrated with
/// closed-form angular arcs. Unbounded graph domains use the renormalized
/// kernel with z0 pinned at (0, -2(support + ||A||_inf)); the value is the
/// difference of boxed bounded-domain integrals plus the closed-form
/// half-plane principal value (-1/2 above the line, +1/2 below).
cplx bchi_area(const PlaneDomain& domain, cplx z, double eps, double outer_radius = 0.0,
               double tol = 1e-9);

/// dBchi(z) = (2/pi) pv-int (z-w)^{-3} over Omega, same machinery.
cplx dbchi_area(const PlaneDomain& domain, cplx z, double eps, double tol = 1e-9);

/// d2Bchi(z) = (-6/pi) pv-int (z-w)^{-4} over Omega.
cplx d2bchi(const PlaneDomain& domain, cplx z, double eps, double tol = 1e-9);

/// Boundary formula for special Lipschitz domains (exact per linear cell).
cplx dbchi_boundary(const GraphDomain& domain, cplx w);

/// Contour formula for bounded polyline domains (closed form per edge).
cplx dbchi_boundary_general(const PlaneDomain& domain, cplx w);

/// Fast Bchi evaluations through the analyticity of Bchi off the boundary:
/// differences are path integrals of the closed-form dBchi along paths inside
/// the domain; absolute values anchor one bchi_area call at a reference point.
class BchiEvaluator {
  public:
    explicit BchiEvaluator(const PlaneDomain& domain, double tol = 1e-10);

    const PlaneDomain& domain() const { return *domain_; }

    /// Bchi(z1) - Bchi(z2); both points must lie inside the domain.
    cplx diff(cplx z1, cplx z2) const;

    /// Anchored value (graphs: the renormalized eqbeurling22 convention).
    cplx value(cplx z) const;

    /// dBchi by the boundary formula (graphs) or edge sums (polygons);
    /// identically zero for half-planes and disks.
    cplx dbchi(cplx w) const;
    cplx d2bchi_boundary(cplx w) const;

  private:
    cplx path_leg(cplx p, cplx q, int depth = 0) const;
    cplx staircase(cplx z1, cplx z2) const;

    const PlaneDomain* domain_;
    double tol_;
    std::unique_ptr<GraphKernelEvaluator> graph_eval_;
    cplx anchor_{};
    mutable std::once_flag ref_once_;
    mutable cplx ref_value_{};
};

}  // namespace beurlab
