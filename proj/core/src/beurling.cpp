#include "beurlab/beurling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beurlab/quadrature.hpp"

namespace beurlab {

namespace {

/// pv integral of (z-w)^{-k} over Omega ∩ {eps < |z-w| < R}:
/// (-1)^k * int_eps^R rho^{1-k} E_k(rho) drho with E_k the angular arc sum.
/// The integrand vanishes on full/empty annuli, which realizes the exact
/// angular cancellation of the kernel.
cplx region_integral(const PlaneDomain& dom, cplx z, double eps, double R, int k, double tol) {
    auto integrand = [&](double rho) -> cplx {
        ArcSet arcs = arcs_inside(dom, z, rho);
        if (arcs.empty()) return {};
        if (arcs.size() == 1 && arcs[0].b - arcs[0].a >= 2.0 * pi - 1e-14) return {};
        return std::pow(rho, 1 - k) * arc_exponential(arcs, k);
    };
    std::vector<double> events = radial_events(dom, z);
    std::vector<double> pts{eps};
    for (double e : events)
        if (e > eps * (1.0 + 1e-12) && e < R * (1.0 - 1e-12)) pts.push_back(e);
    pts.push_back(R);
    std::sort(pts.begin(), pts.end());
    cplx acc{};
    double panel_tol = tol / double(pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] - pts[i] < 1e-15 * (1.0 + pts[i])) continue;
        acc += adaptive_quad_smoothed(integrand, pts[i], pts[i + 1], panel_tol);
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        throw std::runtime_error("beurling: annulus quadrature did not converge");
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * acc;
}

/// Fused difference of the boxed graph region and the boxed half-plane
/// region; equals pv-int (z-w)^{-k} (chi_Omega - chi_Pi) for any box that
/// contains the strip between graph and line.
struct BoxedGraph {
    PlaneDomain omega_box;
    PlaneDomain pi_box;
    double X = 0.0, Ytop = 0.0;

    static BoxedGraph make(const GraphDomain& g, cplx z, std::optional<cplx> z2 = std::nullopt) {
        const auto& f = g.graph.function();
        double s = std::max(std::abs(f.x_min()), std::abs(f.x_max()));
        double margin = 2.0 + 0.5 * s;
        double X = s + std::abs(z.real()) + margin;
        double Ytop = std::max({g.graph.max_abs(), z.imag(), 0.0}) + margin;
        if (z2) {
            X = std::max(X, s + std::abs(z2->real()) + margin);
            Ytop = std::max(Ytop, z2->imag() + margin);
        }
        std::vector<cplx> omega_pts;
        omega_pts.emplace_back(-X, 0.0);
        for (std::size_t i = 0; i <= g.graph.cell_count(); ++i) {
            cplx v = g.graph.vertex(i);
            if (v.real() > -X && v.real() < X) omega_pts.push_back(v);
        }
        omega_pts.emplace_back(X, 0.0);
        omega_pts.emplace_back(X, Ytop);
        omega_pts.emplace_back(-X, Ytop);
        std::vector<cplx> pi_pts{{-X, 0.0}, {X, 0.0}, {X, Ytop}, {-X, Ytop}};
        return BoxedGraph{PlaneDomain::polygon(std::move(omega_pts)),
                          PlaneDomain::polygon(std::move(pi_pts)), X, Ytop};
    }

    cplx fused(cplx z, double eps, int k, double tol) const {
        double reach = 0.0;
        for (cplx corner : {cplx(-X, 0.0), cplx(X, 0.0), cplx(X, Ytop), cplx(-X, Ytop)})
            reach = std::max(reach, std::abs(corner - z));
        return region_integral(omega_box, z, eps, reach, k, tol) -
               region_integral(pi_box, z, eps, reach, k, tol);
    }
};

double half_plane_side(const HalfPlane& hp, cplx z) {
    cplx nrm(-hp.direction.imag(), hp.direction.real());
    return (z - hp.point).real() * nrm.real() + (z - hp.point).imag() * nrm.imag();
}

/// Half-plane pv value of Bchi in the circular-truncation convention.
cplx half_plane_bchi(const HalfPlane& hp, cplx z) {
    double d = half_plane_side(hp, z);
    if (d == 0.0) throw std::invalid_argument("bchi: point on the half-plane boundary");
    cplx rot = hp.direction * hp.direction;  // e^{2 i phi}
    return (d > 0.0 ? -0.5 : 0.5) / rot;     // e^{-2 i phi} covariance
}

/// Closed-form radial tails for the half-plane beyond R (canonical frame),
/// rotated by the line angle. C3/C4 are the antiderivatives in u = d/rho.
double tail_c3(double v) {
    double phi = std::asin(std::clamp(v, 0.0, 1.0));
    return std::sin(4.0 * phi) / 8.0 + std::sin(2.0 * phi) / 4.0;
}
double tail_c4(double v) {
    double phi = std::asin(std::clamp(v, 0.0, 1.0));
    return std::sin(2.0 * phi) / 8.0 - std::sin(6.0 * phi) / 24.0;
}

cplx half_plane_region(const PlaneDomain& dom, const HalfPlane& hp, cplx z, double eps, int k,
                       double tol) {
    double d = std::abs(half_plane_side(hp, z));
    if (d == 0.0) throw std::invalid_argument("beurling: point on the half-plane boundary");
    double R = std::max(64.0 * d, 64.0);
    cplx numeric = region_integral(dom, z, eps, R, k, tol);
    double phi = std::arg(hp.direction);
    cplx rotk = std::polar(1.0, -double(k) * phi);
    cplx tail{};
    if (k == 3) {
        // int_R^inf rho^{-2} E3 = -(2i/3)(1/d) C3(d/R) on either side
        tail = cplx(0.0, -2.0 / 3.0) * (tail_c3(d / R) / d) * rotk;
        tail *= -1.0;  // (-1)^k for k = 3
    } else if (k == 4) {
        double side = half_plane_side(hp, z) > 0.0 ? 1.0 : -1.0;
        tail = cplx(side / (2.0 * d * d) * tail_c4(d / R), 0.0) * rotk;
    }
    return numeric + tail;
}

void require_clearance(const PlaneDomain& dom, cplx z, double eps, double factor) {
    double d = dist_to_boundary(dom, z);
    if (d < factor * eps)
        throw std::invalid_argument("beurling: z too close to the boundary for this eps");
}

}  // namespace

cplx bchi_area(const PlaneDomain& domain, cplx z, double eps, double outer_radius, double tol) {
    if (eps <= 0.0) throw std::invalid_argument("bchi_area: eps must be positive");
    require_clearance(domain, z, eps, 2.0);
    if (auto* hp = domain.as_half_plane()) return half_plane_bchi(*hp, z);
    if (auto* g = domain.as_graph()) {
        if (z.imag() == 0.0)
            throw std::invalid_argument("bchi_area: point on the renormalization line");
        const auto& f = g->graph.function();
        double s = std::max(std::abs(f.x_min()), std::abs(f.x_max()));
        cplx z0(0.0, -2.0 * (g->graph.support_radius() + g->graph.max_abs()));
        BoxedGraph bg = BoxedGraph::make(*g, z, z0);
        cplx fz = (-1.0 / pi) * bg.fused(z, eps, 2, tol);
        cplx fz0 = (-1.0 / pi) * bg.fused(z0, std::min(eps, 0.25 * std::abs(z0.imag())), 2, tol);
        double pz = z.imag() > 0.0 ? -0.5 : 0.5;
        double pz0 = 0.5;  // z0 lies below the line
        (void)s;
        return fz + pz - (fz0 + pz0);
    }
    double reach = radial_reach(domain, z);
    double R = outer_radius > 0.0 ? std::min(outer_radius, reach) : reach;
    if (R <= eps) return {};
    return (-1.0 / pi) * region_integral(domain, z, eps, R, 2, tol);
}

cplx dbchi_area(const PlaneDomain& domain, cplx z, double eps, double tol) {
    if (eps <= 0.0) throw std::invalid_argument("dbchi_area: eps must be positive");
    require_clearance(domain, z, eps, 1.0);
    if (auto* hp = domain.as_half_plane())
        return (2.0 / pi) * half_plane_region(domain, *hp, z, eps, 3, tol);
    if (auto* g = domain.as_graph()) {
        BoxedGraph bg = BoxedGraph::make(*g, z);
        return (2.0 / pi) * bg.fused(z, eps, 3, tol);
    }
    double reach = radial_reach(domain, z);
    if (reach <= eps) return {};
    return (2.0 / pi) * region_integral(domain, z, eps, reach, 3, tol);
}

cplx d2bchi(const PlaneDomain& domain, cplx z, double eps, double tol) {
    if (eps <= 0.0) throw std::invalid_argument("d2bchi: eps must be positive");
    require_clearance(domain, z, eps, 1.0);
    if (auto* hp = domain.as_half_plane())
        return (-6.0 / pi) * half_plane_region(domain, *hp, z, eps, 4, tol);
    if (auto* g = domain.as_graph()) {
        BoxedGraph bg = BoxedGraph::make(*g, z);
        return (-6.0 / pi) * bg.fused(z, eps, 4, tol);
    }
    double reach = radial_reach(domain, z);
    if (reach <= eps) return {};
    return (-6.0 / pi) * region_integral(domain, z, eps, reach, 4, tol);
}

cplx dbchi_boundary(const GraphDomain& domain, cplx w) {
    GraphKernelEvaluator eval(domain.graph);
    return eval.dbchi(w);
}

cplx dbchi_boundary_general(const PlaneDomain& domain, cplx w) {
    const auto* pg = domain.as_polygon();
    if (!pg)
        throw std::invalid_argument("dbchi_boundary_general: needs a bounded polyline domain");
    return polygon_dbchi(*pg, w);
}

// ---------------------------------------------------------------------------

BchiEvaluator::BchiEvaluator(const PlaneDomain& domain, double tol)
    : domain_(&domain), tol_(tol) {
    if (auto* g = domain.as_graph()) {
        graph_eval_ = std::make_unique<GraphKernelEvaluator>(g->graph, tol);
        const auto& f = g->graph.function();
        anchor_ = cplx(0.0, g->graph.max_abs() + 0.5 * (f.x_max() - f.x_min()) + 1.0);
    } else if (auto* d = domain.as_disk()) {
        anchor_ = d->center;
    } else if (auto* pg = domain.as_polygon()) {
        cplx c{};
        for (cplx v : pg->vertices) c += v;
        c /= double(pg->vertices.size());
        if (!domain.contains(c) || dist_to_boundary(domain, c) < 1e-6) {
            // fall back to the deepest point on a coarse grid
            double best = -1.0;
            double x0 = pg->vertices[0].real(), x1 = x0, y0 = pg->vertices[0].imag(), y1 = y0;
            for (cplx v : pg->vertices) {
                x0 = std::min(x0, v.real());
                x1 = std::max(x1, v.real());
                y0 = std::min(y0, v.imag());
                y1 = std::max(y1, v.imag());
            }
            for (int i = 1; i < 32; ++i)
                for (int j = 1; j < 32; ++j) {
                    cplx p(x0 + (x1 - x0) * i / 32.0, y0 + (y1 - y0) * j / 32.0);
                    if (!domain.contains(p)) continue;
                    double dd = dist_to_boundary(domain, p);
                    if (dd > best) {
                        best = dd;
                        c = p;
                    }
                }
        }
        anchor_ = c;
    } else {
        anchor_ = nearest_boundary_point(domain, cplx{}) +
                  cplx(0.0, 1.0) * domain.as_half_plane()->direction;
    }
}

cplx BchiEvaluator::dbchi(cplx w) const {
    if (graph_eval_) return graph_eval_->dbchi(w);
    if (auto* pg = domain_->as_polygon()) return polygon_dbchi(*pg, w);
    return {};  // half-plane and disk: dBchi vanishes off the boundary
}

cplx BchiEvaluator::d2bchi_boundary(cplx w) const {
    if (graph_eval_) return graph_eval_->d2bchi(w);
    if (auto* pg = domain_->as_polygon()) return polygon_d2bchi(*pg, w);
    return {};
}

cplx BchiEvaluator::path_leg(cplx p, cplx q, int depth) const {
    if (std::abs(q - p) == 0.0) return {};
    auto f = [&](cplx w) { return dbchi(w); };
    cplx coarse = segment_integral<8>(f, p, q);
    cplx fine = segment_integral<16>(f, p, q);
    if (std::abs(fine - coarse) < tol_ || depth >= 24) return fine;
    cplx m = 0.5 * (p + q);
    return path_leg(p, m, depth + 1) + path_leg(m, q, depth + 1);
}

cplx BchiEvaluator::staircase(cplx z1, cplx z2) const {
    // z2 -> up -> across -> down to z1, all inside the graph domain
    const auto& g = domain_->as_graph()->graph;
    double H = std::max({anchor_.imag(), z1.imag(), z2.imag()}) + g.max_abs() + 1.0;
    cplx t2(z2.real(), H), t1(z1.real(), H);
    return path_leg(z2, t2) + path_leg(t2, t1) + path_leg(t1, z1);
}

cplx BchiEvaluator::diff(cplx z1, cplx z2) const {
    // integral of dBchi from z2 to z1
    if (domain_->as_half_plane() || domain_->as_disk()) return {};
    double d1 = dist_to_boundary(*domain_, z1);
    double d2 = dist_to_boundary(*domain_, z2);
    double sep = std::abs(z1 - z2);
    if (sep <= 0.75 * std::min(d1, d2)) return path_leg(z2, z1);
    if (domain_->is_graph()) return staircase(z1, z2);
    // bounded polygon: via the interior anchor
    return path_leg(z2, anchor_) + path_leg(anchor_, z1);
}

cplx BchiEvaluator::value(cplx z) const {
    if (auto* hp = domain_->as_half_plane()) return half_plane_bchi(*hp, z);
    if (!domain_->contains(z)) return bchi_area(*domain_, z, 0.25 * dist_to_boundary(*domain_, z));
    std::call_once(ref_once_, [&] {
        double d = dist_to_boundary(*domain_, anchor_);
        ref_value_ = bchi_area(*domain_, anchor_, 0.25 * d);
    });
    return ref_value_ + diff(z, anchor_);
}

}  // namespace beurlab
