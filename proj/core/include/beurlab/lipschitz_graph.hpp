#pragma once

#include <stdexcept>
#include <vector>

#include "beurlab/common.hpp"

namespace beurlab {

/// Compactly supported Lipschitz function A on a uniform grid; the graph
/// {(x, A(x))} bounds the special Lipschitz domain {y > A(x)}.
class LipschitzGraph {
  public:
    LipschitzGraph(double grid_origin, double grid_step, std::vector<double> samples,
                   double slope_bound, double support_radius)
        : fn_(grid_origin, grid_step, std::move(samples)),
          slope_bound_(slope_bound),
          support_radius_(support_radius) {
        if (slope_bound < 0.0) throw std::invalid_argument("LipschitzGraph: slope_bound < 0");
        validate();
    }

    const SampledFunction& function() const { return fn_; }
    double grid_step() const { return fn_.step; }
    double slope_bound() const { return slope_bound_; }
    double support_radius() const { return support_radius_; }
    double value(double x) const { return fn_(x); }
    double max_abs() const { return fn_.max_abs(); }

    /// Boundary point at abscissa x.
    cplx point(double x) const { return {x, fn_(x)}; }

    /// Graph polyline vertices including the grid endpoints (A vanishes there).
    std::size_t cell_count() const { return fn_.size() - 1; }
    cplx vertex(std::size_t i) const { return {fn_.x_at(i), fn_.values[i]}; }
    double cell_slope(std::size_t i) const {
        return (fn_.values[i + 1] - fn_.values[i]) / fn_.step;
    }

  private:
    void validate() const {
        const auto& v = fn_.values;
        double h = fn_.step;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (std::abs(v[i + 1] - v[i]) > slope_bound_ * h * (1.0 + 1e-12) + 1e-300)
                throw std::invalid_argument("LipschitzGraph: discrete Lipschitz condition violated");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            double x = fn_.x_at(i);
            if (std::abs(x) >= support_radius_ && v[i] != 0.0)
                throw std::invalid_argument("LipschitzGraph: samples must vanish outside support");
        }
        if (v.front() != 0.0 || v.back() != 0.0)
            throw std::invalid_argument("LipschitzGraph: endpoint samples must vanish");
    }

    SampledFunction fn_;
    double slope_bound_;
    double support_radius_;
};

}  // namespace beurlab
