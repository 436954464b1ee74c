#pragma once

#include <vector>

#include "beurlab/common.hpp"
#include "beurlab/lipschitz_graph.hpp"
#include "beurlab/plane_domain.hpp"

namespace beurlab {

/// Evaluates the boundary-integral formulas for the graph kernel
///   dbchi(w)  = (1/pi) int A'(x) (x + iA(x) - w)^{-2} dx
///   d2bchi(w) = (2/pi) int A'(x) (x + iA(x) - w)^{-3} dx
/// exactly per linear cell (the integrand has a closed-form antiderivative on
/// each cell). A chord-merging hierarchy accelerates the far field: a group
/// of cells is replaced by its chord when the area between graph and chord
/// cannot move the result by more than the error budget.
class GraphKernelEvaluator {
  public:
    explicit GraphKernelEvaluator(const LipschitzGraph& graph, double tol = 1e-11);

    cplx dbchi(cplx w) const;
    cplx d2bchi(cplx w) const;

    /// Direct O(n) sums without the hierarchy (reference for tests).
    cplx dbchi_direct(cplx w) const;
    cplx d2bchi_direct(cplx w) const;

    const LipschitzGraph& graph() const { return *graph_; }

  private:
    struct GroupNode {
        std::size_t i0, i1;   // cell range [i0, i1)
        cplx za, zb;          // chord endpoints
        double deviation;     // max |A - chord| over the range
        cplx center;
        double radius;        // bounding disk of the graph piece
        int child[2] = {-1, -1};
    };

    template <int KernelPow>
    cplx eval(cplx w) const;

    int build(std::size_t i0, std::size_t i1);

    const LipschitzGraph* graph_;
    double tol_;
    std::vector<GroupNode> nodes_;
    std::vector<cplx> verts_;
};

/// Contour formulas on a closed polyline (counterclockwise), closed form per
/// edge: dbchi(w) = (i/2pi) sum_e (conj(e)/e) [1/(w-b) - 1/(w-a)].
cplx polygon_dbchi(const LipschitzPolygon& polygon, cplx w);
cplx polygon_d2bchi(const LipschitzPolygon& polygon, cplx w);

}  // namespace beurlab
