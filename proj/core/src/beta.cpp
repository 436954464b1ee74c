#include "beurlab/beta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "beurlab/parallel.hpp"

namespace beurlab {

namespace {

BetaResult beta1_on_window(const std::function<double(double)>& f, double center, double length,
                           double lo, double hi, double quad_step, bool clipped) {
    if (quad_step <= 0.0) quad_step = length / 64.0;
    quad_step = std::min(quad_step, length / 32.0);
    auto nq = std::size_t(std::ceil((hi - lo) / quad_step));
    nq = std::max<std::size_t>(nq, 16);
    std::vector<double> xq(nq), fq(nq), w(nq, (hi - lo) / double(nq));
    for (std::size_t i = 0; i < nq; ++i) {
        xq[i] = lo + (double(i) + 0.5) * (hi - lo) / double(nq);
        fq[i] = f(xq[i]);
    }
    L1FitResult fit = l1_affine_fit(xq, fq, w);
    BetaResult out;
    out.fit.slope = fit.slope;
    out.fit.intercept = fit.intercept;
    out.fit.residual_l1 = fit.residual;
    out.fit.gap_bound = fit.gap_bound;
    out.fit.clipped = clipped;
    out.beta1 = fit.residual / (length * length);
    (void)center;
    return out;
}

}  // namespace

BetaResult beta1_function(const std::function<double(double)>& f, double center, double length,
                          double quad_step) {
    if (length <= 0.0) throw std::invalid_argument("beta1_function: empty interval");
    return beta1_on_window(f, center, length, center - 1.5 * length, center + 1.5 * length,
                           quad_step, false);
}

BetaResult beta1_function(const SampledFunction& f, double center, double length,
                          double quad_step) {
    if (length <= 0.0) throw std::invalid_argument("beta1_function: empty interval");
    if (center - 0.5 * length < f.x_min() - 1e-12 || center + 0.5 * length > f.x_max() + 1e-12)
        throw std::invalid_argument("beta1_function: carrier extends beyond the sampled range");
    double lo = center - 1.5 * length, hi = center + 1.5 * length;
    bool clipped = lo < f.x_min() || hi > f.x_max();
    lo = std::max(lo, f.x_min());
    hi = std::min(hi, f.x_max());
    return beta1_on_window([&](double x) { return f(x); }, center, length, lo, hi, quad_step,
                           clipped);
}

namespace {

struct ArcSamples {
    std::vector<cplx> pts;
    std::vector<double> w;  // H^1 weights
    bool clipped = false;
};

/// Distance-to-line objective minimized over the offset (weighted median).
double line_objective(const ArcSamples& s, double angle, double* best_offset) {
    cplx n(-std::sin(angle), std::cos(angle));
    std::vector<double> proj(s.pts.size());
    for (std::size_t i = 0; i < s.pts.size(); ++i)
        proj[i] = s.pts[i].real() * n.real() + s.pts[i].imag() * n.imag();
    std::vector<int> order(proj.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return proj[std::size_t(a)] < proj[std::size_t(b)]; });
    double total = 0.0;
    for (double wi : s.w) total += wi;
    double acc = 0.0, c = proj[std::size_t(order.back())];
    for (int idx : order) {
        acc += s.w[std::size_t(idx)];
        if (acc >= 0.5 * total) {
            c = proj[std::size_t(idx)];
            break;
        }
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < proj.size(); ++i) obj += s.w[i] * std::abs(proj[i] - c);
    if (best_offset) *best_offset = c;
    return obj;
}

ArcSamples sample_arc(const DyadicTree& tree, int node_id, const BoundaryParam* param,
                      int min_samples) {
    const DyadicNode& n = tree.node(node_id);
    double len = n.t1 - n.t0;
    double lo = n.t0 - len, hi = n.t1 + len;
    ArcSamples out;
    auto nq = std::size_t(std::max(96, min_samples * 4));
    out.pts.resize(nq);
    out.w.resize(nq);
    if (tree.carrier() == CarrierKind::PolygonBoundary) {
        for (std::size_t i = 0; i < nq; ++i) {
            double s = lo + (double(i) + 0.5) * (hi - lo) / double(nq);
            out.pts[i] = param->point(s);
            out.w[i] = (hi - lo) / double(nq);
        }
        return out;
    }
    // graph boundary: parameter is x, weight by arc element
    const auto& g = tree.domain()->as_graph()->graph;
    const auto& f = g.function();
    double wlo = lo, whi = hi;
    if (wlo < f.x_min() || whi > f.x_max()) {
        out.clipped = true;
        wlo = std::max(wlo, f.x_min());
        whi = std::min(whi, f.x_max());
    }
    auto samples_inside =
        std::size_t(std::max(0.0, std::floor((whi - f.origin) / f.step) -
                                      std::ceil((wlo - f.origin) / f.step) + 1.0));
    if (samples_inside < std::size_t(min_samples))
        throw std::invalid_argument("beta1_curve: arc too short for the polyline resolution");
    for (std::size_t i = 0; i < nq; ++i) {
        double x = wlo + (double(i) + 0.5) * (whi - wlo) / double(nq);
        out.pts[i] = g.point(x);
        double dx = (whi - wlo) / double(nq);
        double xm = x - 0.49 * dx, xp = x + 0.49 * dx;
        double sl = (f(xp) - f(xm)) / (xp - xm);
        out.w[i] = dx * std::sqrt(1.0 + sl * sl);
    }
    return out;
}

}  // namespace

CurveBetaResult beta1_curve(const DyadicTree& boundary_tree, int node_id, int min_samples) {
    if (boundary_tree.carrier() == CarrierKind::Segment)
        throw std::invalid_argument("beta1_curve: needs a boundary tree");
    std::optional<BoundaryParam> param;
    if (boundary_tree.carrier() == CarrierKind::PolygonBoundary)
        param.emplace(*boundary_tree.domain());
    ArcSamples s = sample_arc(boundary_tree, node_id, param ? &*param : nullptr, min_samples);
    const DyadicNode& n = boundary_tree.node(node_id);
    double len = n.t1 - n.t0;

    // candidate 1: chord-frame L1 regression
    cplx chord = s.pts.back() - s.pts.front();
    double phi = std::atan2(chord.imag(), chord.real());
    cplx rot(std::cos(-phi), std::sin(-phi));
    std::vector<double> xr(s.pts.size()), yr(s.pts.size());
    for (std::size_t i = 0; i < s.pts.size(); ++i) {
        cplx p = (s.pts[i] - s.pts.front()) * rot;
        xr[i] = p.real();
        yr[i] = p.imag();
    }
    double best_angle = phi, best_obj = std::numeric_limits<double>::infinity(), best_off = 0.0;
    if (std::abs(chord) > 0.0) {
        L1FitResult fit = l1_affine_fit(xr, yr, s.w);
        double cand = phi + std::atan(fit.slope);
        double off;
        double obj = line_objective(s, cand, &off);
        best_angle = cand;
        best_obj = obj;
        best_off = off;
    }
    // candidate 2: 180-angle sweep with golden-section refinement
    for (int k = 0; k < 180; ++k) {
        double ang = pi * double(k) / 180.0;
        double off;
        double obj = line_objective(s, ang, &off);
        if (obj < best_obj) {
            best_obj = obj;
            best_angle = ang;
            best_off = off;
        }
    }
    double a = best_angle - pi / 180.0, b = best_angle + pi / 180.0;
    const double gr = 0.618033988749895;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = line_objective(s, x1, nullptr), f2 = line_objective(s, x2, nullptr);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = line_objective(s, x1, nullptr);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = line_objective(s, x2, nullptr);
        }
    }
    double mid = 0.5 * (a + b), off;
    double obj = line_objective(s, mid, &off);
    if (obj < best_obj) {
        best_obj = obj;
        best_angle = mid;
        best_off = off;
    }

    CurveBetaResult out;
    out.beta1 = best_obj / (len * len);
    out.line_angle = best_angle;
    out.line_offset = best_off;
    out.clipped = s.clipped;
    return out;
}

BetaProfile::BetaProfile(const DyadicTree* tree, std::vector<BetaResult> values)
    : tree_(tree), values_(std::move(values)) {}

double BetaProfile::level_max(int level) const {
    double m = 0.0;
    for (int id : tree_->level_nodes(level)) m = std::max(m, values_[std::size_t(id)].beta1);
    return m;
}

double BetaProfile::level_mean(int level) const {
    double m = 0.0;
    auto ids = tree_->level_nodes(level);
    for (int id : ids) m += values_[std::size_t(id)].beta1;
    return ids.empty() ? 0.0 : m / double(ids.size());
}

void BetaProfile::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "level,index,center,length,beta1,slope,intercept\n";
    for (int id = 0; id < node_count(); ++id) {
        const DyadicNode& n = tree_->node(id);
        const BetaResult& b = values_[std::size_t(id)];
        out << n.level << ',' << n.index << ',' << n.mid() << ',' << n.length << ',' << b.beta1
            << ',' << b.fit.slope << ',' << b.fit.intercept << '\n';
    }
}

namespace {

template <typename F>
BetaProfile profile_of_function(const F& f, const DyadicTree& tree) {
    std::vector<BetaResult> values(std::size_t(tree.node_count()));
    parallel_for(std::size_t(tree.node_count()), [&](std::size_t i) {
        const DyadicNode& n = tree.node(int(i));
        values[i] = beta1_function(f, n.mid(), n.length);
        values[i].fit.carrier = int(i);
    });
    return BetaProfile(&tree, std::move(values));
}

}  // namespace

BetaProfile beta_profile(const SampledFunction& f, const DyadicTree& tree) {
    std::vector<BetaResult> values(std::size_t(tree.node_count()));
    parallel_for(std::size_t(tree.node_count()), [&](std::size_t i) {
        const DyadicNode& n = tree.node(int(i));
        double lo = n.mid() - 1.5 * n.length, hi = n.mid() + 1.5 * n.length;
        bool clipped = lo < f.x_min() || hi > f.x_max();
        lo = std::max(lo, f.x_min());
        hi = std::min(hi, f.x_max());
        if (hi <= lo) {
            values[i] = BetaResult{};
        } else {
            values[i] = beta1_on_window([&](double x) { return f(x); }, n.mid(), n.length, lo, hi,
                                        0.0, clipped);
        }
        values[i].fit.carrier = int(i);
    });
    BetaProfile prof(&tree, std::move(values));
    prof.set_function_l1(f.l1_norm());
    return prof;
}

BetaProfile beta_profile(const std::function<double(double)>& f, const DyadicTree& tree) {
    return profile_of_function(f, tree);
}

BetaProfile beta_profile(const PlaneDomain& domain, const DyadicTree& boundary_tree) {
    std::vector<BetaResult> values(std::size_t(boundary_tree.node_count()));
    if (domain.is_graph()) {
        const auto& f = domain.as_graph()->graph.function();
        return beta_profile(f, boundary_tree);
    }
    parallel_for(std::size_t(boundary_tree.node_count()), [&](std::size_t i) {
        CurveBetaResult c = beta1_curve(boundary_tree, int(i));
        values[i].beta1 = c.beta1;
        values[i].fit.slope = std::tan(c.line_angle);
        values[i].fit.intercept = c.line_offset;
        values[i].fit.carrier = int(i);
        values[i].fit.clipped = c.clipped;
    });
    return BetaProfile(&boundary_tree, std::move(values));
}

}  // namespace beurlab
