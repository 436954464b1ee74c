#include "beurlab/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace beurlab {

namespace {

/// Max of the piecewise-linear graph function over [lo, hi] (exact).
double graph_max_on(const SampledFunction& f, double lo, double hi) {
    double m = 0.0;  // flat rays contribute 0
    lo = std::max(lo, f.x_min());
    hi = std::min(hi, f.x_max());
    if (hi <= lo) return m;
    m = std::max(m, std::max(f(lo), f(hi)));
    auto i0 = std::size_t(std::max(0.0, std::ceil((lo - f.origin) / f.step)));
    auto i1 = std::size_t(std::max(0.0, std::floor((hi - f.origin) / f.step)));
    for (std::size_t i = i0; i <= i1 && i < f.size(); ++i) m = std::max(m, f.values[i]);
    return m;
}

double graph_min_on(const SampledFunction& f, double lo, double hi) {
    double m = 0.0;
    lo = std::max(lo, f.x_min());
    hi = std::min(hi, f.x_max());
    if (hi <= lo) return m;
    m = std::min(m, std::min(f(lo), f(hi)));
    auto i0 = std::size_t(std::max(0.0, std::ceil((lo - f.origin) / f.step)));
    auto i1 = std::size_t(std::max(0.0, std::floor((hi - f.origin) / f.step)));
    for (std::size_t i = i0; i <= i1 && i < f.size(); ++i) m = std::min(m, f.values[i]);
    return m;
}

bool segment_meets_square(cplx a, cplx b, cplx lo, double side) {
    double x0 = lo.real(), y0 = lo.imag(), x1 = x0 + side, y1 = y0 + side;
    // Liang-Barsky style clipping of [a,b] against the box
    double t0 = 0.0, t1 = 1.0;
    double dx = b.real() - a.real(), dy = b.imag() - a.imag();
    auto clip = [&](double p, double q) {
        if (p == 0.0) return q >= 0.0;
        double r = q / p;
        if (p < 0.0) {
            if (r > t1) return false;
            t0 = std::max(t0, r);
        } else {
            if (r < t0) return false;
            t1 = std::min(t1, r);
        }
        return t0 <= t1;
    };
    return clip(-dx, a.real() - x0) && clip(dx, x1 - a.real()) && clip(-dy, a.imag() - y0) &&
           clip(dy, y1 - a.imag());
}

}  // namespace

bool dilated_square_inside(const PlaneDomain& domain, const WhitneyCube& cube, double factor) {
    double half = 0.5 * factor * cube.side;
    cplx c = cube.center();
    cplx lo = c - cplx(half, half);
    return std::visit(
        [&](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, HalfPlane>) {
                for (int i = 0; i < 4; ++i) {
                    cplx corner = lo + cplx((i & 1) ? 2 * half : 0.0, (i & 2) ? 2 * half : 0.0);
                    if (!domain.contains(corner)) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, Disk>) {
                double far = 0.0;
                for (int i = 0; i < 4; ++i) {
                    cplx corner = lo + cplx((i & 1) ? 2 * half : 0.0, (i & 2) ? 2 * half : 0.0);
                    far = std::max(far, std::abs(corner - d.center));
                }
                return far < d.radius;
            } else if constexpr (std::is_same_v<T, GraphDomain>) {
                double ybot = c.imag() - half;
                return ybot > graph_max_on(d.graph.function(), c.real() - half, c.real() + half);
            } else {
                if (!domain.contains(c)) return false;
                for (std::size_t i = 0; i < d.vertices.size(); ++i) {
                    cplx a = d.vertices[i];
                    cplx b = d.vertices[(i + 1) % d.vertices.size()];
                    if (segment_meets_square(a, b, lo, 2 * half)) return false;
                }
                return true;
            }
        },
        domain.variant());
}

namespace {

/// Does the square meet Omega at all? (conservative, used for collar cells)
bool square_meets_domain(const PlaneDomain& domain, const WhitneyCube& cube) {
    if (domain.contains(cube.center())) return true;
    if (const auto* g = domain.as_graph()) {
        double lo = cube.corner.real(), hi = lo + cube.side;
        double ytop = cube.corner.imag() + cube.side;
        return ytop > graph_min_on(g->graph.function(), lo, hi);
    }
    for (int i = 0; i < 4; ++i) {
        cplx corner = cube.corner + cplx((i & 1) ? cube.side : 0.0, (i & 2) ? cube.side : 0.0);
        if (domain.contains(corner)) return true;
    }
    return dist_to_boundary(domain, cube.center()) < cube.side;
}

struct Builder {
    const PlaneDomain& domain;
    const Box& box;
    int min_level, max_level;
    WhitneyDecomposition out;

    WhitneyCube make(int level, std::int64_t ix, std::int64_t iy) const {
        WhitneyCube q;
        q.level = level;
        q.ix = ix;
        q.iy = iy;
        q.side = box.side / double(std::int64_t(1) << level);
        q.corner = cplx(box.x0 + double(ix) * q.side, box.y0 + double(iy) * q.side);
        return q;
    }

    void visit(int level, std::int64_t ix, std::int64_t iy) {
        WhitneyCube q = make(level, ix, iy);
        if (dilated_square_inside(domain, q, 5.0)) {
            if (level == min_level) {
                WhitneyCube parent = make(level - 1, ix >> 1, iy >> 1);
                q.interior_truncated = dilated_square_inside(domain, parent, 5.0);
            }
            out.cubes.push_back(q);
            return;
        }
        if (level >= max_level) {
            if (square_meets_domain(domain, q)) out.collar_cells.push_back(q);
            return;
        }
        for (int c = 0; c < 4; ++c) visit(level + 1, 2 * ix + (c & 1), 2 * iy + (c >> 1));
    }
};

}  // namespace

WhitneyDecomposition build_whitney(const PlaneDomain& domain, const Box& box, int min_level,
                                   int max_level) {
    if (box.side <= 0.0) throw std::invalid_argument("build_whitney: empty box");
    if (min_level < 1) throw std::invalid_argument("build_whitney: min_level must be >= 1");
    if (min_level > max_level) throw std::invalid_argument("build_whitney: min_level > max_level");
    if (domain.is_bounded() && domain.area() <= 0.0)
        throw std::invalid_argument("build_whitney: degenerate domain");

    Builder b{domain, box, min_level, max_level, {}};
    b.out.box = box;
    b.out.min_level = min_level;
    b.out.max_level = max_level;
    std::int64_t n0 = std::int64_t(1) << min_level;
    for (std::int64_t ix = 0; ix < n0; ++ix)
        for (std::int64_t iy = 0; iy < n0; ++iy) b.visit(min_level, ix, iy);

    if (b.out.cubes.empty() && b.out.collar_cells.empty())
        throw std::invalid_argument("build_whitney: box does not meet the domain");
    // deterministic order: by level, then lattice index
    auto key = [](const WhitneyCube& q) { return std::tuple(q.level, q.ix, q.iy); };
    std::sort(b.out.cubes.begin(), b.out.cubes.end(),
              [&](const WhitneyCube& a, const WhitneyCube& c) { return key(a) < key(c); });
    std::sort(b.out.collar_cells.begin(), b.out.collar_cells.end(),
              [&](const WhitneyCube& a, const WhitneyCube& c) { return key(a) < key(c); });
    return b.out;
}

int phi_assign(const WhitneyCube& cube, const DyadicTree& tree, double whitney_r) {
    const DyadicNode& root = tree.root();
    if (tree.carrier() != CarrierKind::PolygonBoundary) {
        // graph / segment: vertical projection; lattice must be aligned
        double rel = (cube.corner.real() - root.t0) / cube.side;
        double span = (root.t1 - root.t0) / cube.side;
        int level = int(std::lround(std::log2(span)));
        if (std::abs(std::exp2(double(level)) - span) > 1e-6 * span || level > tree.depth())
            throw std::invalid_argument("phi_assign: tree not aligned with cube lattice or too shallow");
        auto index = std::int64_t(std::llround(rel));
        if (std::abs(rel - double(index)) > 1e-6)
            throw std::invalid_argument("phi_assign: cube base not on the tree lattice");
        int id = tree.find(level, index);
        if (id < 0) throw std::invalid_argument("phi_assign: no node at the required scale");
        return id;
    }
    // polygon: scale-matched level, nearest arc meeting (r+1)Q
    double total = root.t1 - root.t0;
    int level = int(std::lround(std::log2(total / cube.side)));
    level = std::clamp(level, 0, tree.depth());
    if (total / std::exp2(double(level)) > 4.0 * cube.side && level == tree.depth())
        throw std::invalid_argument("phi_assign: tree too shallow for this cube scale");
    double rho_half = 0.5 * (whitney_r + 1.0) * cube.side;
    cplx c = cube.center();
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int id : tree.level_nodes(level)) {
        cplx m = tree.arc_midpoint(id);
        double d = std::abs(m - c);
        if (d < best_d) {
            best_d = d;
            best = id;
        }
    }
    if (best < 0) throw std::invalid_argument("phi_assign: empty tree level");
    // the chosen arc must meet the (r+1)-dilate; sup-norm test on sampled arc points
    const DyadicNode& n = tree.node(best);
    bool meets = false;
    for (int k = 0; k <= 8; ++k) {
        cplx p = tree.domain()->boundary_point(n.t0 + (n.t1 - n.t0) * double(k) / 8.0);
        if (std::max(std::abs(p.real() - c.real()), std::abs(p.imag() - c.imag())) <=
            rho_half + 1e-12)
            meets = true;
    }
    if (!meets) throw std::invalid_argument("phi_assign: nearest node does not meet (r+1)Q");
    return best;
}

PhiStats phi_assign_all(WhitneyDecomposition& deco, const DyadicTree& tree) {
    PhiStats stats;
    std::map<int, int> mult;
    for (auto& q : deco.cubes) {
        q.anchor = phi_assign(q, tree, deco.whitney_r);
        ++mult[q.anchor];
        const DyadicNode& n = tree.node(q.anchor);
        // distance from the cube to sampled arc points and the arc diameter
        double dmin = std::numeric_limits<double>::infinity();
        cplx pa = tree.arc_midpoint(q.anchor);
        cplx pmin = pa, pmax = pa;
        for (int k = 0; k <= 8; ++k) {
            double t = n.t0 + (n.t1 - n.t0) * double(k) / 8.0;
            cplx p = tree.carrier() == CarrierKind::PolygonBoundary
                         ? tree.domain()->boundary_point(t)
                         : (tree.carrier() == CarrierKind::GraphBoundary
                                ? tree.domain()->as_graph()->graph.point(t)
                                : cplx{t, 0.0});
            dmin = std::min(dmin, std::abs(p - q.center()));
            pmin = {std::min(pmin.real(), p.real()), std::min(pmin.imag(), p.imag())};
            pmax = {std::max(pmax.real(), p.real()), std::max(pmax.imag(), p.imag())};
        }
        stats.max_dist_ratio = std::max(stats.max_dist_ratio, dmin / q.side);
        stats.max_diam_ratio = std::max(stats.max_diam_ratio, std::abs(pmax - pmin) / q.side);
    }
    for (auto& [id, count] : mult) stats.max_multiplicity = std::max(stats.max_multiplicity, count);
    return stats;
}

}  // namespace beurlab
