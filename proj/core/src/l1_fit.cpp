#include "beurlab/l1_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace beurlab {

namespace {

struct SlopeEval {
    double intercept;
    double residual;
    double subgrad;  // one-sided derivative of min_a F(a, slope) w.r.t. slope
};

SlopeEval eval_slope(std::span<const double> x, std::span<const double> y,
                     std::span<const double> w, double b, std::vector<int>& order,
                     std::vector<double>& u) {
    std::size_t n = x.size();
    u.resize(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = y[i] - b * x[i];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return u[std::size_t(i)] < u[std::size_t(j)]; });
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += w[i];
    double acc = 0.0;
    double a = u[std::size_t(order.back())];
    for (int idx : order) {
        acc += w[std::size_t(idx)];
        if (acc >= 0.5 * total) {
            a = u[std::size_t(idx)];
            break;
        }
    }
    double res = 0.0, g = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = u[i] - a;
        res += w[i] * std::abs(r);
        if (r > 0.0)
            g -= w[i] * x[i];
        else if (r < 0.0)
            g += w[i] * x[i];
        // zero residuals contribute a subgradient interval; dropping them keeps
        // a valid element of the subdifferential for the bisection test
    }
    return {a, res, g};
}

}  // namespace

double l1_intercept_for_slope(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w, double slope, double* residual) {
    std::vector<int> order;
    std::vector<double> u;
    SlopeEval e = eval_slope(x, y, w, slope, order, u);
    if (residual) *residual = e.residual;
    return e.intercept;
}

L1FitResult l1_affine_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w, double rel_tol) {
    std::size_t n = x.size();
    if (n < 2 || y.size() != n || w.size() != n)
        throw std::invalid_argument("l1_affine_fit: need matching arrays with >= 2 points");

    // slope bracket from extreme pairwise slopes
    double xmin = x[0], xmax = x[0], ymin = y[0], ymax = y[0];
    for (std::size_t i = 0; i < n; ++i) {
        xmin = std::min(xmin, x[i]);
        xmax = std::max(xmax, x[i]);
        ymin = std::min(ymin, y[i]);
        ymax = std::max(ymax, y[i]);
    }
    double span_x = std::max(xmax - xmin, 1e-300);
    double B = 4.0 * (ymax - ymin) / span_x + 1.0;

    std::vector<int> order;
    std::vector<double> u;
    double lo = -B, hi = B;
    SlopeEval elo = eval_slope(x, y, w, lo, order, u);
    SlopeEval ehi = eval_slope(x, y, w, hi, order, u);
    // widen if the bracket does not straddle the optimum
    for (int k = 0; k < 60 && elo.subgrad > 0.0; ++k) {
        lo *= 2.0;
        elo = eval_slope(x, y, w, lo, order, u);
    }
    for (int k = 0; k < 60 && ehi.subgrad < 0.0; ++k) {
        hi *= 2.0;
        ehi = eval_slope(x, y, w, hi, order, u);
    }

    for (int it = 0; it < 200 && hi - lo > 1e-16 * B; ++it) {
        double mid = 0.5 * (lo + hi);
        SlopeEval em = eval_slope(x, y, w, mid, order, u);
        if (em.subgrad < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double b = 0.5 * (lo + hi);
    SlopeEval e = eval_slope(x, y, w, b, order, u);
    double best_res = e.residual, best_b = b, best_a = e.intercept;
    for (double cand : {lo, hi}) {
        SlopeEval ec = eval_slope(x, y, w, cand, order, u);
        if (ec.residual < best_res) {
            best_res = ec.residual;
            best_b = cand;
            best_a = ec.intercept;
        }
    }

    // residual as a function of slope is Lipschitz with constant sum w|x|
    double lip = 0.0;
    for (std::size_t i = 0; i < n; ++i) lip += w[i] * std::abs(x[i]);
    L1FitResult out;
    out.slope = best_b;
    out.intercept = best_a;
    out.residual = best_res;
    out.gap_bound = std::min(best_res, lip * (hi - lo)) + rel_tol * best_res;
    return out;
}

}  // namespace beurlab
