#pragma once

#include <span>
#include <vector>

namespace beurlab {

struct L1FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;   // sum of w_i |f_i - slope x_i - intercept|
    double gap_bound = 0.0;  // certified bound on residual - infimum
};

/// Weighted least-absolute-deviations line fit, min over (a,b) of
/// sum w_i |y_i - (a + b x_i)|. The objective is jointly convex and, after
/// minimizing the intercept by a weighted median, piecewise linear in the
/// slope; bisection on the slope subgradient brackets the optimum and the
/// bracket width certifies the gap.
L1FitResult l1_affine_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w, double rel_tol = 1e-9);

/// Optimal weighted-median intercept and residual for a fixed slope.
double l1_intercept_for_slope(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w, double slope, double* residual);

}  // namespace beurlab
