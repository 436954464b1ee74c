#include "beurlab/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace beurlab {

namespace {

constexpr double two_pi = 2.0 * pi;

void segment_crossings(cplx p0, cplx p1, cplx c, double rho, std::vector<double>& thetas) {
    cplx d = p1 - p0;
    cplx f = p0 - c;
    double a = std::norm(d);
    if (a == 0.0) return;
    double b = 2.0 * (f.real() * d.real() + f.imag() * d.imag());
    double q = std::norm(f) - rho * rho;
    double disc = b * b - 4.0 * a * q;
    if (disc <= 0.0) return;
    double sq = std::sqrt(disc);
    for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        if (t >= 0.0 && t <= 1.0) {
            cplx p = p0 + t * d;
            thetas.push_back(std::arg(p - c));
        }
    }
}

ArcSet classify(const PlaneDomain& domain, cplx c, double rho, std::vector<double>& thetas) {
    ArcSet arcs;
    if (thetas.empty()) {
        if (domain.contains(c + cplx(rho, 0.0))) arcs.push_back({0.0, two_pi});
        return arcs;
    }
    for (double& th : thetas) {
        th = std::fmod(th, two_pi);
        if (th < 0.0) th += two_pi;
    }
    std::sort(thetas.begin(), thetas.end());
    std::size_t n = thetas.size();
    for (std::size_t i = 0; i < n; ++i) {
        double a = thetas[i];
        double b = (i + 1 < n) ? thetas[i + 1] : thetas[0] + two_pi;
        if (b - a < 1e-15) continue;
        double mid = 0.5 * (a + b);
        if (domain.contains(c + rho * cplx(std::cos(mid), std::sin(mid)))) arcs.push_back({a, b});
    }
    return arcs;
}

}  // namespace

ArcSet arcs_inside(const PlaneDomain& domain, cplx c, double rho) {
    std::vector<double> thetas;
    if (auto* hp = domain.as_half_plane()) {
        // signed distance of c to the line, positive on the domain side
        cplx nrm(-hp->direction.imag(), hp->direction.real());
        double d = (c - hp->point).real() * nrm.real() + (c - hp->point).imag() * nrm.imag();
        if (std::abs(d) >= rho) {
            ArcSet arcs;
            if (d > 0.0) arcs.push_back({0.0, two_pi});
            return arcs;
        }
        // crossing points: c + rho e^{i th} on the line
        double phi = std::arg(hp->direction);
        double beta = std::asin(std::clamp(-d / rho, -1.0, 1.0));
        thetas.push_back(phi + beta);
        thetas.push_back(phi + pi - beta);
        return classify(domain, c, rho, thetas);
    }
    if (auto* dk = domain.as_disk()) {
        double d = std::abs(c - dk->center);
        if (d + rho <= dk->radius) return {{0.0, two_pi}};
        if (d <= 1e-300) return {};  // concentric circle outside (rho >= radius handled above)
        if (std::abs(d - rho) >= dk->radius) return {};
        double cosg =
            std::clamp((d * d + rho * rho - dk->radius * dk->radius) / (2.0 * d * rho), -1.0, 1.0);
        double g = std::acos(cosg);
        double phi = std::arg(dk->center - c);
        return {{phi - g, phi + g}};
    }
    if (auto* g = domain.as_graph()) {
        const auto& fn = g->graph.function();
        // graph cells with bbox pruning, then the two flat rays
        for (std::size_t i = 0; i < g->graph.cell_count(); ++i) {
            cplx p0 = g->graph.vertex(i), p1 = g->graph.vertex(i + 1);
            double lo = std::min(p0.real(), p1.real()), hi = std::max(p0.real(), p1.real());
            if (hi < c.real() - rho || lo > c.real() + rho) continue;
            segment_crossings(p0, p1, c, rho, thetas);
        }
        double big = std::abs(c) + rho + 1.0;
        segment_crossings(cplx(fn.x_min(), 0.0), cplx(-big, 0.0), c, rho, thetas);
        segment_crossings(cplx(fn.x_max(), 0.0), cplx(big, 0.0), c, rho, thetas);
        return classify(domain, c, rho, thetas);
    }
    const auto* pg = domain.as_polygon();
    for (std::size_t i = 0; i < pg->vertices.size(); ++i) {
        cplx p0 = pg->vertices[i], p1 = pg->vertices[(i + 1) % pg->vertices.size()];
        segment_crossings(p0, p1, c, rho, thetas);
    }
    return classify(domain, c, rho, thetas);
}

cplx arc_exponential(const ArcSet& arcs, int k) {
    cplx acc{};
    for (const Arc& a : arcs) {
        cplx eb = std::polar(1.0, -double(k) * a.b);
        cplx ea = std::polar(1.0, -double(k) * a.a);
        acc += (eb - ea) / cplx(0.0, -double(k));
    }
    return acc;
}

double arc_measure(const ArcSet& arcs) {
    double s = 0.0;
    for (const Arc& a : arcs) s += a.b - a.a;
    return s;
}

std::vector<double> radial_events(const PlaneDomain& domain, cplx c) {
    std::vector<double> ev;
    auto add_segment = [&](cplx p0, cplx p1) {
        ev.push_back(std::abs(p0 - c));
        ev.push_back(std::abs(p1 - c));
        cplx d = p1 - p0;
        double L2 = std::norm(d);
        if (L2 > 0.0) {
            double t = ((c - p0).real() * d.real() + (c - p0).imag() * d.imag()) / L2;
            if (t > 0.0 && t < 1.0) ev.push_back(std::abs(p0 + t * d - c));
        }
    };
    if (auto* hp = domain.as_half_plane()) {
        ev.push_back(dist_to_boundary(domain, c));
        (void)hp;
    } else if (auto* dk = domain.as_disk()) {
        double d = std::abs(c - dk->center);
        ev.push_back(std::abs(d - dk->radius));
        ev.push_back(d + dk->radius);
    } else if (auto* g = domain.as_graph()) {
        for (std::size_t i = 0; i < g->graph.cell_count(); ++i)
            add_segment(g->graph.vertex(i), g->graph.vertex(i + 1));
        ev.push_back(std::abs(c.imag()));  // flat-ray tangency
    } else {
        const auto* pg = domain.as_polygon();
        for (std::size_t i = 0; i < pg->vertices.size(); ++i)
            add_segment(pg->vertices[i], pg->vertices[(i + 1) % pg->vertices.size()]);
    }
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-13 * (1.0 + a); }),
             ev.end());
    return ev;
}

double radial_reach(const PlaneDomain& domain, cplx c) {
    if (auto* dk = domain.as_disk()) return std::abs(c - dk->center) + dk->radius;
    if (auto* pg = domain.as_polygon()) {
        double m = 0.0;
        for (cplx v : pg->vertices) m = std::max(m, std::abs(v - c));
        return m;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace beurlab
