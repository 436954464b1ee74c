#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace beurlab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Axis-aligned square box used by the Whitney builder (side of the dyadic root).
struct Box {
    double x0 = 0.0;
    double y0 = 0.0;
    double side = 0.0;

    bool contains(cplx z) const {
        return z.real() >= x0 && z.real() <= x0 + side && z.imag() >= y0 && z.imag() <= y0 + side;
    }
};

/// Uniformly sampled real function on [origin, origin + step*(n-1)],
/// extended by zero outside; evaluation is piecewise linear.
struct SampledFunction {
    double origin = 0.0;
    double step = 1.0;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(double origin_, double step_, std::vector<double> values_)
        : origin(origin_), step(step_), values(std::move(values_)) {
        if (step <= 0.0) throw std::invalid_argument("SampledFunction: step must be positive");
        if (values.size() < 2) throw std::invalid_argument("SampledFunction: need at least 2 samples");
    }

    std::size_t size() const { return values.size(); }
    double x_min() const { return origin; }
    double x_max() const { return origin + step * double(values.size() - 1); }
    double x_at(std::size_t i) const { return origin + step * double(i); }

    double operator()(double x) const {
        if (x <= x_min() || x >= x_max()) return 0.0;
        double u = (x - origin) / step;
        auto i = static_cast<std::size_t>(u);
        if (i >= values.size() - 1) i = values.size() - 2;
        double t = u - double(i);
        return values[i] + t * (values[i + 1] - values[i]);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    /// Sup of |slope| over the sample cells.
    double max_abs_slope() const {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            m = std::max(m, std::abs(values[i + 1] - values[i]) / step);
        return m;
    }

    /// L1 norm of the piecewise linear interpolant (exact).
    double l1_norm() const;

    /// Midpoint slopes as a sampled function on cell centers.
    SampledFunction derivative() const;
};

inline double SampledFunction::l1_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        double a = values[i], b = values[i + 1];
        if (a * b >= 0.0) {
            s += 0.5 * (std::abs(a) + std::abs(b)) * step;
        } else {
            double t = a / (a - b);  // zero crossing
            s += 0.5 * std::abs(a) * t * step + 0.5 * std::abs(b) * (1.0 - t) * step;
        }
    }
    return s;
}

inline SampledFunction SampledFunction::derivative() const {
    std::vector<double> d(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) d[i] = (values[i + 1] - values[i]) / step;
    return SampledFunction(origin + 0.5 * step, step, std::move(d));
}

inline double sqr(double x) { return x * x; }

}  // namespace beurlab
