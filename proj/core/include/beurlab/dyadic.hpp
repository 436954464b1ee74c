#pragma once

#include <cstdint>
#include <vector>

#include "beurlab/common.hpp"
#include "beurlab/plane_domain.hpp"

namespace beurlab {

/// Node of a dyadic tree over a 1-D carrier. For segments and graph
/// boundaries the parameter is the abscissa x and `length` is the base
/// interval length (the paper's ell(phi(Q)) convention); for polygon
/// boundaries the parameter is arc length and `length` the arc length.
struct DyadicNode {
    int level = 0;
    std::int64_t index = 0;
    double t0 = 0.0, t1 = 0.0;
    double length = 0.0;
    int parent = -1;
    int child[2] = {-1, -1};

    double mid() const { return 0.5 * (t0 + t1); }
};

enum class CarrierKind { Segment, GraphBoundary, PolygonBoundary };

/// Full binary tree of dyadic nodes; nodes stored in an arena, breadth-first.
class DyadicTree {
  public:
    /// Tree over a line segment [a, b].
    static DyadicTree over_segment(double a, double b, int depth);
    /// Tree over the boundary of a bounded domain (arc-length parameter) or a
    /// graph boundary restricted to [a, b] in x. Throws on half-planes without
    /// a window and on degenerate polylines.
    static DyadicTree over_boundary(const PlaneDomain& domain, int depth);
    static DyadicTree over_graph_window(const PlaneDomain& graph_domain, double a, double b,
                                        int depth);

    const DyadicNode& root() const { return nodes_[0]; }
    const DyadicNode& node(int id) const { return nodes_[std::size_t(id)]; }
    int node_count() const { return int(nodes_.size()); }
    int depth() const { return depth_; }
    CarrierKind carrier() const { return kind_; }
    const PlaneDomain* domain() const { return domain_; }

    /// Node id at (level, index), or -1.
    int find(int level, std::int64_t index) const;

    /// Ids of all ancestors of `id`, innermost first, including `id` itself.
    std::vector<int> ancestors_inclusive(int id) const;

    /// Ids of the nodes at one level.
    std::vector<int> level_nodes(int level) const;

    /// H^1 length of the carrier piece of a node (for graphs: arc length of
    /// the graph over the base interval).
    double arc_length(int id) const;

    /// Midpoint of the node's carrier arc as a plane point (boundary trees).
    cplx arc_midpoint(int id) const;

  private:
    DyadicTree() = default;
    void build(double a, double b, int depth);

    std::vector<DyadicNode> nodes_;
    int depth_ = 0;
    CarrierKind kind_ = CarrierKind::Segment;
    const PlaneDomain* domain_ = nullptr;  // non-owning; boundary trees only
};

}  // namespace beurlab
