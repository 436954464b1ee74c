#include "beurlab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace beurlab {

void DyadicTree::build(double a, double b, int depth) {
    if (depth < 0) throw std::invalid_argument("dyadic_tree: depth must be >= 0");
    if (!(b > a)) throw std::invalid_argument("dyadic_tree: empty carrier");
    depth_ = depth;
    std::size_t total = (std::size_t(2) << depth) - 1;
    nodes_.reserve(total);
    nodes_.push_back(DyadicNode{0, 0, a, b, b - a, -1, {-1, -1}});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].level >= depth) continue;
        DyadicNode n = nodes_[i];
        double m = 0.5 * (n.t0 + n.t1);
        for (int c = 0; c < 2; ++c) {
            DyadicNode ch;
            ch.level = n.level + 1;
            ch.index = 2 * n.index + c;
            ch.t0 = c == 0 ? n.t0 : m;
            ch.t1 = c == 0 ? m : n.t1;
            ch.length = ch.t1 - ch.t0;
            ch.parent = int(i);
            nodes_[i].child[c] = int(nodes_.size());
            nodes_.push_back(ch);
        }
    }
}

DyadicTree DyadicTree::over_segment(double a, double b, int depth) {
    DyadicTree t;
    t.kind_ = CarrierKind::Segment;
    t.build(a, b, depth);
    return t;
}

DyadicTree DyadicTree::over_boundary(const PlaneDomain& domain, int depth) {
    if (domain.is_graph()) {
        const auto& g = domain.as_graph()->graph;
        return over_graph_window(domain, g.function().x_min(), g.function().x_max(), depth);
    }
    if (!domain.is_bounded())
        throw std::invalid_argument("dyadic_tree: half-plane boundary needs an explicit window");
    DyadicTree t;
    t.kind_ = CarrierKind::PolygonBoundary;
    t.domain_ = &domain;
    t.build(0.0, domain.boundary_length(), depth);
    return t;
}

DyadicTree DyadicTree::over_graph_window(const PlaneDomain& graph_domain, double a, double b,
                                         int depth) {
    if (!graph_domain.is_graph())
        throw std::invalid_argument("over_graph_window: domain is not a graph");
    DyadicTree t;
    t.kind_ = CarrierKind::GraphBoundary;
    t.domain_ = &graph_domain;
    t.build(a, b, depth);
    return t;
}

int DyadicTree::find(int level, std::int64_t index) const {
    if (level < 0 || level > depth_) return -1;
    if (index < 0 || index >= (std::int64_t(1) << level)) return -1;
    int id = 0;
    for (int l = level - 1; l >= 0; --l) {
        int bit = int((index >> l) & 1);
        id = nodes_[std::size_t(id)].child[bit];
        if (id < 0) return -1;
    }
    return id;
}

std::vector<int> DyadicTree::ancestors_inclusive(int id) const {
    std::vector<int> out;
    while (id >= 0) {
        out.push_back(id);
        id = nodes_[std::size_t(id)].parent;
    }
    return out;
}

std::vector<int> DyadicTree::level_nodes(int level) const {
    std::vector<int> out;
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[std::size_t(i)].level == level) out.push_back(i);
    return out;
}

double DyadicTree::arc_length(int id) const {
    const DyadicNode& n = nodes_[std::size_t(id)];
    if (kind_ != CarrierKind::GraphBoundary) return n.t1 - n.t0;
    const auto& g = domain_->as_graph()->graph;
    const auto& f = g.function();
    // arc length of the polyline over [t0, t1]
    double s = 0.0;
    double h = f.step;
    double lo = std::max(n.t0, f.x_min()), hi = std::min(n.t1, f.x_max());
    if (hi <= lo) return n.t1 - n.t0;  // entirely on the flat rays
    s += (n.t1 - n.t0) - (hi - lo);    // flat parts
    auto cell0 = std::size_t(std::max(0.0, std::floor((lo - f.origin) / h)));
    auto cell1 = std::size_t(std::min(double(f.size() - 2), std::floor((hi - f.origin) / h)));
    for (std::size_t i = cell0; i <= cell1; ++i) {
        double xa = std::max(lo, f.x_at(i));
        double xb = std::min(hi, f.x_at(i + 1));
        if (xb <= xa) continue;
        double sl = (f.values[i + 1] - f.values[i]) / h;
        s += (xb - xa) * std::sqrt(1.0 + sl * sl);
    }
    return s;
}

cplx DyadicTree::arc_midpoint(int id) const {
    const DyadicNode& n = nodes_[std::size_t(id)];
    switch (kind_) {
        case CarrierKind::Segment:
            return {n.mid(), 0.0};
        case CarrierKind::GraphBoundary: {
            const auto& g = domain_->as_graph()->graph;
            return g.point(n.mid());
        }
        case CarrierKind::PolygonBoundary:
            return domain_->boundary_point(n.mid());
    }
    return {};
}

}  // namespace beurlab
