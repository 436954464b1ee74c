#include "beurlab/boundary_eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beurlab {

namespace {

/// Exact integral of s/(zeta(x) - w)^pow over one chord from za to zb with
/// slope s (zeta runs along the chord, d zeta/dx = 1 + i s).
template <int Pow>
cplx chord_term(cplx za, cplx zb, double s, cplx w) {
    if (s == 0.0) return {};
    cplx m(1.0, s);
    if constexpr (Pow == 2) {
        return (s / m) * (1.0 / (za - w) - 1.0 / (zb - w));
    } else {
        static_assert(Pow == 3);
        cplx ia = 1.0 / (za - w), ib = 1.0 / (zb - w);
        return (s / (2.0 * m)) * (ia * ia - ib * ib);
    }
}

}  // namespace

GraphKernelEvaluator::GraphKernelEvaluator(const LipschitzGraph& graph, double tol)
    : graph_(&graph), tol_(tol) {
    std::size_t n = graph.cell_count();
    verts_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) verts_[i] = graph.vertex(i);
    nodes_.reserve(2 * n);
    build(0, n);
}

int GraphKernelEvaluator::build(std::size_t i0, std::size_t i1) {
    GroupNode g;
    g.i0 = i0;
    g.i1 = i1;
    g.za = verts_[i0];
    g.zb = verts_[i1];
    double x0 = g.za.real(), x1 = g.zb.real();
    double dev = 0.0;
    for (std::size_t k = i0 + 1; k < i1; ++k) {
        double t = (verts_[k].real() - x0) / (x1 - x0);
        double chord_y = g.za.imag() + t * (g.zb.imag() - g.za.imag());
        dev = std::max(dev, std::abs(verts_[k].imag() - chord_y));
    }
    g.deviation = dev;
    g.center = 0.5 * (g.za + g.zb);
    double rad = 0.0;
    for (std::size_t k = i0; k <= i1; ++k) rad = std::max(rad, std::abs(verts_[k] - g.center));
    g.radius = rad;
    int id = int(nodes_.size());
    nodes_.push_back(g);
    if (i1 - i0 > 1) {
        std::size_t mid = i0 + (i1 - i0) / 2;
        int c0 = build(i0, mid);
        int c1 = build(mid, i1);
        nodes_[std::size_t(id)].child[0] = c0;
        nodes_[std::size_t(id)].child[1] = c1;
    }
    return id;
}

template <int KernelPow>
cplx GraphKernelEvaluator::eval(cplx w) const {
    double total_len = verts_.back().real() - verts_.front().real();
    cplx acc{};
    // explicit stack walk
    std::vector<int> stack{0};
    stack.reserve(64);
    while (!stack.empty()) {
        const GroupNode& g = nodes_[std::size_t(stack.back())];
        stack.pop_back();
        double d = std::abs(w - g.center) - g.radius;
        double len = g.zb.real() - g.za.real();
        if (g.deviation == 0.0 || (d > 0.0 && g.deviation * len / (d * d * d) *
                                                      (KernelPow == 2 ? 2.0 : 6.0 / std::max(d, 1e-300)) <=
                                                  tol_ * len / total_len)) {
            double s = (g.zb.imag() - g.za.imag()) / len;
            acc += chord_term<KernelPow>(g.za, g.zb, s, w);
            continue;
        }
        if (g.child[0] < 0) {
            double s = (g.zb.imag() - g.za.imag()) / len;
            acc += chord_term<KernelPow>(g.za, g.zb, s, w);
            continue;
        }
        stack.push_back(g.child[0]);
        stack.push_back(g.child[1]);
    }
    return acc * (KernelPow == 2 ? 1.0 / pi : 2.0 / pi);
}

cplx GraphKernelEvaluator::dbchi(cplx w) const { return eval<2>(w); }
cplx GraphKernelEvaluator::d2bchi(cplx w) const { return eval<3>(w); }

cplx GraphKernelEvaluator::dbchi_direct(cplx w) const {
    cplx acc{};
    for (std::size_t i = 0; i + 1 < verts_.size(); ++i) {
        double len = verts_[i + 1].real() - verts_[i].real();
        double s = (verts_[i + 1].imag() - verts_[i].imag()) / len;
        acc += chord_term<2>(verts_[i], verts_[i + 1], s, w);
    }
    return acc / pi;
}

cplx GraphKernelEvaluator::d2bchi_direct(cplx w) const {
    cplx acc{};
    for (std::size_t i = 0; i + 1 < verts_.size(); ++i) {
        double len = verts_[i + 1].real() - verts_[i].real();
        double s = (verts_[i + 1].imag() - verts_[i].imag()) / len;
        acc += chord_term<3>(verts_[i], verts_[i + 1], s, w);
    }
    return acc * (2.0 / pi);
}

cplx polygon_dbchi(const LipschitzPolygon& polygon, cplx w) {
    cplx acc{};
    const auto& vs = polygon.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        cplx a = vs[i], b = vs[(i + 1) % vs.size()];
        cplx e = b - a;
        acc += (std::conj(e) / e) * (1.0 / (w - b) - 1.0 / (w - a));
    }
    return acc * cplx(0.0, 1.0) / (2.0 * pi);
}

cplx polygon_d2bchi(const LipschitzPolygon& polygon, cplx w) {
    cplx acc{};
    const auto& vs = polygon.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        cplx a = vs[i], b = vs[(i + 1) % vs.size()];
        cplx e = b - a;
        cplx ib = 1.0 / (w - b), ia = 1.0 / (w - a);
        acc += (std::conj(e) / e) * (ia * ia - ib * ib);
    }
    return acc * cplx(0.0, 1.0) / (2.0 * pi);
}

}  // namespace beurlab
