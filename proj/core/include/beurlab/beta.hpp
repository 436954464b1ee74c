#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "beurlab/common.hpp"
#include "beurlab/dyadic.hpp"
#include "beurlab/l1_fit.hpp"

namespace beurlab {

/// Best-L1 affine approximant on the 3-dilate of a carrier node.
struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_l1 = 0.0;  // integral of |f - rho| over the (clipped) 3-dilate
    double gap_bound = 0.0;    // certified optimality gap of the regression
    int carrier = -1;          // DyadicNode id, when fitted over a tree node
    bool clipped = false;      // 3-dilate exited the sampled range
};

struct BetaResult {
    double beta1 = 0.0;
    AffineFit fit;
};

/// beta_1(f, I): normalized best-L1 affine distance over 3I, composite
/// midpoint quadrature at step <= ell(I)/64 on the piecewise-linear samples.
BetaResult beta1_function(const SampledFunction& f, double center, double length,
                          double quad_step = 0.0);

/// Same, against an arbitrary callable (used by oracles and generators).
BetaResult beta1_function(const std::function<double(double)>& f, double center, double length,
                          double quad_step = 0.0);

/// beta_1(Gamma, P) for a boundary arc node: infimum over lines of the
/// normalized distance integral over the 3-dilate, chord-frame L1 regression
/// with a 180-angle sweep fallback. Returns the best line as (angle, offset):
/// the line {z : Re(z e^{-i angle}) ... } through offset along the normal.
struct CurveBetaResult {
    double beta1 = 0.0;
    double line_angle = 0.0;   // direction angle of the optimal line
    double line_offset = 0.0;  // signed distance of the line from the origin
    bool clipped = false;
};

CurveBetaResult beta1_curve(const DyadicTree& boundary_tree, int node_id, int min_samples = 8);

/// Multiscale profile: beta_1 at every node of a tree.
class BetaProfile {
  public:
    BetaProfile() = default;
    BetaProfile(const DyadicTree* tree, std::vector<BetaResult> values);

    const BetaResult& at(int node_id) const { return values_[std::size_t(node_id)]; }
    const DyadicTree& tree() const { return *tree_; }
    int node_count() const { return int(values_.size()); }

    /// Max beta over a level (diagnostics) and mean beta over a level.
    double level_max(int level) const;
    double level_mean(int level) const;

    /// L1 norm of the profiled function when known (coarse-tail closures).
    double function_l1() const { return f_l1_; }
    void set_function_l1(double v) { f_l1_ = v; }

    void write_csv(const std::string& path) const;

  private:
    const DyadicTree* tree_ = nullptr;
    std::vector<BetaResult> values_;
    double f_l1_ = 0.0;
};

/// Profile of a sampled function over a segment tree (graph convention:
/// the carrier parameter is x and lengths are base lengths).
BetaProfile beta_profile(const SampledFunction& f, const DyadicTree& tree);
BetaProfile beta_profile(const std::function<double(double)>& f, const DyadicTree& tree);

/// Profile of a domain boundary over its boundary tree (curve betas for
/// polygons, function betas of A for graph domains).
BetaProfile beta_profile(const PlaneDomain& domain, const DyadicTree& boundary_tree);

}  // namespace beurlab
