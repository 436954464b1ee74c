#pragma once

#include <cstdint>
#include <vector>

#include "beurlab/common.hpp"
#include "beurlab/dyadic.hpp"
#include "beurlab/plane_domain.hpp"

namespace beurlab {

struct WhitneyCube {
    cplx corner;          // lower-left
    double side = 0.0;
    int level = 0;
    std::int64_t ix = 0, iy = 0;
    bool interior_truncated = false;  // stopped at min_level although the parent fits
    int anchor = -1;                  // dyadic boundary node assigned by phi_assign

    cplx center() const { return corner + cplx(0.5 * side, 0.5 * side); }
    cplx dilated_corner(double factor) const {
        return center() - cplx(0.5 * factor * side, 0.5 * factor * side);
    }
};

struct WhitneyDecomposition {
    Box box;
    int min_level = 0;
    int max_level = 0;
    double whitney_r = 21.0;
    std::vector<WhitneyCube> cubes;
    /// max_level cells meeting both Omega and its complement: the uncovered
    /// boundary collar, kept so energy truncation is explicit.
    std::vector<WhitneyCube> collar_cells;

    double collar_width() const { return box.side * std::sqrt(2.0) / double(1 << max_level); }
};

/// Whitney cubes of Omega ∩ box on the dyadic lattice anchored at the box.
/// Accepts Q when 5Q ⊂ Omega and the parent fails that test (property (ii)
/// with r = 21); min_level cells whose parent also fits are emitted with the
/// interior_truncated flag. Throws if the box misses the domain entirely.
WhitneyDecomposition build_whitney(const PlaneDomain& domain, const Box& box, int min_level,
                                   int max_level);

/// Exact containment test for the dilated square: factor*Q ⊂ Omega.
bool dilated_square_inside(const PlaneDomain& domain, const WhitneyCube& cube, double factor);

/// Boundary cube assignment phi(Q). Graph trees use the vertical-projection
/// arc over base(Q); polygon trees pick the scale-matched node nearest to the
/// cube among those meeting (r+1)Q. Throws if the tree is too shallow.
int phi_assign(const WhitneyCube& cube, const DyadicTree& tree, double whitney_r = 21.0);

struct PhiStats {
    int max_multiplicity = 0;     // #cubes sharing one node
    double max_dist_ratio = 0.0;  // max over cubes of dist(Q, phi(Q)) / ell(Q): the measured M
    double max_diam_ratio = 0.0;  // max over cubes of diam(phi(Q)) / ell(Q)
};

/// Assigns anchors for every cube and reports the measured constants.
PhiStats phi_assign_all(WhitneyDecomposition& deco, const DyadicTree& tree);

}  // namespace beurlab
