#include "beurlab/energies.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "beurlab/parallel.hpp"
#include "beurlab/quadrature.hpp"
#include "beurlab/rng.hpp"

namespace beurlab {

void EnergyReport::write_ledger_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "level,ix,iy,center_x,center_y,dist,dbchi_abs,contribution\n";
    for (const auto& c : ledger)
        out << c.level << ',' << c.ix << ',' << c.iy << ',' << c.cx << ',' << c.cy << ',' << c.dist
            << ',' << c.dbchi_abs << ',' << c.contribution << '\n';
}

namespace {

double weight_exponent(const SeminormParams& q) { return q.p - q.alpha * q.p; }

/// Analytic bound on the weighted energy outside the box (graph domains):
/// |dBchi| <= (1/pi)||A'||_1 / dist(strip)^2 with closed-form moment integrals.
double outside_box_bound(const PlaneDomain& domain, const SeminormParams& q, const Box& box) {
    const auto* g = domain.as_graph();
    if (!g) return 0.0;
    double p = q.p, wexp = weight_exponent(q);
    const auto& f = g->graph.function();
    double a1 = 0.0;  // ||A'||_1
    for (std::size_t i = 0; i + 1 < f.size(); ++i) a1 += std::abs(f.values[i + 1] - f.values[i]);
    double c1 = std::pow(a1 / pi, p);
    double s = g->graph.support_radius();
    double Y = box.y0 + box.side;
    double X = std::min(std::abs(box.x0), std::abs(box.x0 + box.side));
    double expo = p + q.alpha * p - 2.0;  // > 0 under alpha p > 1, p > 1
    // above the box: int_{y>Y} int_x (x^2+y^2)^{-p} y^{wexp} = Cp * Y^{-expo}/expo
    double Cp = std::sqrt(pi) * std::exp(std::lgamma(p - 0.5) - std::lgamma(p));
    double above = c1 * Cp * std::pow(Y, -expo) / expo;
    // beyond the sides: dist to the support strip ~ |x| - s
    double D = 0.5 * std::exp(std::lgamma((wexp + 1.0) / 2.0) + std::lgamma((p + q.alpha * p - 1.0) / 2.0) -
                              std::lgamma(p));
    double side = X > s ? 2.0 * c1 * D * std::pow(X - s, -expo) / expo : c1;
    return above + side;
}

}  // namespace

EnergyReport weighted_energy(const PlaneDomain& domain, SeminormParams params,
                             const WhitneyDecomposition& whitney, int samples_per_side) {
    params.validate();
    if (samples_per_side != 3 && samples_per_side != 5)
        throw std::invalid_argument("weighted_energy: samples_per_side must be 3 or 5");
    double p = params.p, wexp = weight_exponent(params);

    BchiEvaluator eval(domain);
    const auto& cubes = whitney.cubes;
    std::vector<CubeContribution> ledger(cubes.size());

    auto cube_term = [&](const WhitneyCube& q, CubeContribution& led) {
        double acc = 0.0, dbg = 0.0;
        auto accumulate = [&](auto nodes, auto weights) {
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                for (std::size_t j = 0; j < nodes.size(); ++j) {
                    cplx z = q.center() + 0.5 * q.side * cplx(nodes[i], nodes[j]);
                    double d = dist_to_boundary(domain, z);
                    double v = std::abs(eval.dbchi(z));
                    acc += 0.25 * weights[i] * weights[j] * std::pow(v, p) * std::pow(d, wexp);
                    dbg = std::max(dbg, v);
                }
            }
        };
        if (samples_per_side == 3)
            accumulate(GaussLegendre<3>::nodes, GaussLegendre<3>::weights);
        else
            accumulate(GaussLegendre<5>::nodes, GaussLegendre<5>::weights);
        led.level = q.level;
        led.ix = q.ix;
        led.iy = q.iy;
        led.cx = q.center().real();
        led.cy = q.center().imag();
        led.dist = dist_to_boundary(domain, q.center());
        led.dbchi_abs = dbg;
        led.contribution = acc * q.side * q.side;
    };

    parallel_for(cubes.size(), [&](std::size_t i) { cube_term(cubes[i], ledger[i]); });

    EnergyReport rep;
    rep.kind = EnergyKind::weighted_derivative;
    rep.params = params;
    for (const auto& c : ledger) rep.cube_sum += c.contribution;
    rep.ledger = std::move(ledger);

    // collar closure: measured |dBchi| plateau probed just inside each collar cell
    std::vector<double> collar(whitney.collar_cells.size(), 0.0);
    parallel_for(whitney.collar_cells.size(), [&](std::size_t i) {
        const WhitneyCube& cell = whitney.collar_cells[i];
        cplx c = cell.center();
        cplx nb = nearest_boundary_point(domain, c);
        cplx dir = c - nb;
        double nd = std::abs(dir);
        if (nd < 1e-14 * cell.side) dir = cplx(0.0, 1.0);
        else dir /= nd;
        if (!domain.contains(nb + dir * (0.5 * cell.side))) dir = -dir;
        cplx probe = nb + dir * (1.5 * cell.side);
        if (!domain.contains(probe)) return;
        double v = std::abs(eval.dbchi(probe));
        double w = cell.side * std::sqrt(2.0);
        collar[i] = std::pow(v, p) * std::pow(w, wexp + 1.0) / (wexp + 1.0) * cell.side;
    });
    for (double v : collar) rep.collar_estimate += v;
    rep.collar_low = 0.5 * rep.collar_estimate;
    rep.collar_high = 2.0 * rep.collar_estimate;
    rep.outside_box_tail = outside_box_bound(domain, params, whitney.box);
    rep.value = std::pow(rep.cube_sum + rep.collar_estimate, 1.0 / p);
    return rep;
}

namespace {

struct McAccum {
    double full = 0.0;
    double restricted = 0.0;
    double variance = 0.0;
};

/// The inner y-integral around x for either energy kind, stratified over
/// dyadic annuli; `power`/`expo` select |df|^power / r^expo.
template <typename Term>
McAccum inner_integral(const PlaneDomain& domain, const BchiEvaluator& eval, cplx x, double d,
                       double restrict_radius, double t_max, const McBudget& budget,
                       SplitMix64 rng, const Term& term) {
    McAccum acc;
    // innermost disk r < d/4: |f(x)-f(y)| ~ |f'(x)| r, closed-form moment
    double q0 = 0.25 * d;
    double fp = std::abs(eval.dbchi(x));
    acc.full += term.inner_disk(fp, q0);
    if (q0 <= restrict_radius) acc.restricted += term.inner_disk(fp, std::min(q0, restrict_radius));

    double r1 = q0;
    for (int m = 0; m < budget.strata_out && r1 < t_max; ++m) {
        double r2 = std::min(2.0 * r1, t_max);
        double area = pi * (r2 * r2 - r1 * r1);
        double mean = 0.0, m2 = 0.0;
        int nsamp = budget.samples_per_stratum;
        for (int s = 0; s < nsamp; ++s) {
            double r = std::sqrt(rng.uniform(r1 * r1, r2 * r2));
            double th = rng.uniform(0.0, 2.0 * pi);
            cplx y = x + std::polar(r, th);
            double val = 0.0;
            if (domain.contains(y)) {
                cplx df = eval.diff(x, y);
                val = term.integrand(std::abs(df), r);
            }
            double delta = val - mean;
            mean += delta / double(s + 1);
            m2 += delta * (val - mean);
        }
        double estimate = area * mean;
        acc.full += estimate;
        if (r2 <= restrict_radius) acc.restricted += estimate;
        else if (r1 < restrict_radius) acc.restricted += estimate * (restrict_radius - r1) / (r2 - r1);
        if (nsamp > 1) acc.variance += area * area * m2 / double(nsamp - 1) / double(nsamp);
        r1 = r2;
    }
    // far tail with the limiting value of Bchi
    if (std::isfinite(t_max) && r1 >= t_max * (1.0 - 1e-12) && domain.is_graph()) {
        cplx far(x.real(), t_max * 4.0 + std::abs(x.imag()));
        double dinf = std::abs(eval.diff(x, far));
        acc.full += term.far_tail(dinf, r1);
    }
    return acc;
}

struct SobolevTerm {
    double alpha;
    double p;
    double inner_disk(double fp, double q0) const {
        return fp * fp * 2.0 * pi * std::pow(q0, 2.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    }
    double integrand(double df, double r) const {
        return df * df / std::pow(r, 2.0 + 2.0 * alpha);
    }
    double far_tail(double dinf, double R) const {
        return dinf * dinf * 2.0 * pi * std::pow(R, -2.0 * alpha) / (2.0 * alpha);
    }
    /// outer-integrand density (D^alpha f)^p at collar height t for plateau fp
    double collar_density(double fp, double t) const {
        double d2 = inner_disk(fp, t);
        return std::pow(std::max(d2, 0.0), 0.5 * p);
    }
};

struct BesovTerm {
    double sp;  // alpha * p
    double p;
    double inner_disk(double fp, double q0) const {
        return std::pow(fp, p) * 2.0 * pi * std::pow(q0, p - sp + 1.0) / (p - sp + 1.0);
    }
    double integrand(double df, double r) const { return std::pow(df, p) / std::pow(r, sp + 1.0); }
    double far_tail(double dinf, double R) const {
        return std::pow(dinf, p) * 2.0 * pi * std::pow(R, 1.0 - sp) / (sp - 1.0);
    }
    double collar_density(double fp, double t) const { return inner_disk(fp, t); }
};

template <typename Term>
EnergyReport mc_energy(EnergyKind kind, const PlaneDomain& domain, SeminormParams params,
                       const WhitneyDecomposition& whitney, const BchiEvaluator& eval,
                       const McBudget& budget, const Term& term, bool outer_power_half) {
    params.validate();
    double p = params.p;
    const auto& cubes = whitney.cubes;
    double t_max = domain.is_bounded() ? domain.diameter()
                                       : 4.0 * (whitney.box.side + whitney.box.side);

    int ppc = std::clamp(budget.points_per_cube, 1, 9);
    std::vector<double> cube_val(cubes.size(), 0.0), cube_res(cubes.size(), 0.0),
        cube_var(cubes.size(), 0.0);
    std::vector<CubeContribution> ledger(cubes.size());

    parallel_for(cubes.size(), [&](std::size_t i) {
        const WhitneyCube& q = cubes[i];
        double acc = 0.0, res = 0.0, var = 0.0;
        for (int k = 0; k < ppc; ++k) {
            // low-discrepancy-ish fixed offsets inside the cube
            static const double offs[9][2] = {{0.25, 0.25}, {0.75, 0.75}, {0.25, 0.75},
                                              {0.75, 0.25}, {0.5, 0.5},   {0.5, 0.25},
                                              {0.25, 0.5},  {0.75, 0.5},  {0.5, 0.75}};
            cplx x = q.corner + q.side * cplx(offs[k][0], offs[k][1]);
            double d = dist_to_boundary(domain, x);
            if (d <= 0.0 || !domain.contains(x)) continue;
            SplitMix64 rng = SplitMix64::with_key(budget.seed, (std::uint64_t(i) << 8) | std::uint64_t(k));
            McAccum mc =
                inner_integral(domain, eval, x, d, q.side, t_max, budget, rng, term);
            double w = 1.0 / double(ppc);
            if (outer_power_half) {
                double dsq = std::max(mc.full, 0.0);
                acc += w * std::pow(dsq, 0.5 * p);
                // delta method: d(dsq^{p/2}) = (p/2) dsq^{p/2-1}
                double g = 0.5 * p * std::pow(std::max(dsq, 1e-300), 0.5 * p - 1.0);
                var += w * w * g * g * mc.variance;
            } else {
                acc += w * std::max(mc.full, 0.0);
                res += w * std::max(mc.restricted, 0.0);
                var += w * w * mc.variance;
            }
        }
        double area = q.side * q.side;
        cube_val[i] = acc * area;
        cube_res[i] = res * area;
        cube_var[i] = var * area * area;
        ledger[i] = {q.level, q.ix,
                     q.iy,    q.center().real(),
                     q.center().imag(), dist_to_boundary(domain, q.center()),
                     0.0,     cube_val[i]};
    });

    EnergyReport rep;
    rep.kind = kind;
    rep.params = params;
    double var_total = 0.0;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        rep.cube_sum += cube_val[i];
        rep.restricted_sum += cube_res[i];
        var_total += cube_var[i];
    }
    rep.ledger = std::move(ledger);
    rep.mc_rel_std_error = rep.cube_sum > 0.0 ? std::sqrt(var_total) / rep.cube_sum : 0.0;
    if (rep.mc_rel_std_error > 0.2)
        throw std::runtime_error("mc_energy: sampling budget too small (rel. std. error > 20%)");

    // collar closure: plateau |dBchi| probe per uncovered cell, outer integrand
    // integrated in the boundary-distance coordinate across the cell
    std::vector<double> collar(whitney.collar_cells.size(), 0.0);
    parallel_for(whitney.collar_cells.size(), [&](std::size_t i) {
        const WhitneyCube& cell = whitney.collar_cells[i];
        cplx c = cell.center();
        cplx nb = nearest_boundary_point(domain, c);
        cplx dir = c - nb;
        double nd = std::abs(dir);
        if (nd < 1e-14 * cell.side) dir = cplx(0.0, 1.0);
        else dir /= nd;
        if (!domain.contains(nb + dir * (0.5 * cell.side))) dir = -dir;
        cplx probe = nb + dir * (1.5 * cell.side);
        if (!domain.contains(probe)) return;
        double fp = std::abs(eval.dbchi(probe));
        double w = cell.side * std::sqrt(2.0);
        // 16-point rectangle rule in the distance coordinate
        double acc = 0.0;
        for (int k = 0; k < 16; ++k) acc += term.collar_density(fp, (k + 0.5) / 16.0 * w);
        collar[i] = acc / 16.0 * w * cell.side;
    });
    for (double v : collar) rep.collar_estimate += v;
    rep.collar_low = 0.5 * rep.collar_estimate;
    rep.collar_high = 2.0 * rep.collar_estimate;
    rep.value = std::pow(rep.cube_sum + rep.collar_estimate, 1.0 / p);
    return rep;
}

}  // namespace

EnergyReport frac_sobolev_energy(const PlaneDomain& domain, SeminormParams params,
                                 const WhitneyDecomposition& whitney, const BchiEvaluator& eval,
                                 const McBudget& budget) {
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw std::invalid_argument("frac_sobolev_energy: alpha must be in (0,1)");
    SobolevTerm term{params.alpha, params.p};
    return mc_energy(EnergyKind::fractional_sobolev, domain, params, whitney, eval, budget, term,
                     /*outer_power_half=*/true);
}

EnergyReport besov_energy(const PlaneDomain& domain, SeminormParams params,
                          const WhitneyDecomposition& whitney, const BchiEvaluator& eval,
                          const McBudget& budget) {
    BesovTerm term{params.alpha * params.p, params.p};
    return mc_energy(EnergyKind::besov_energy, domain, params, whitney, eval, budget, term,
                     /*outer_power_half=*/false);
}

BetaBoundCheck pointwise_beta_bound_check(const PlaneDomain& domain, const WhitneyCube& cube,
                                          const BetaProfile& profile, const BchiEvaluator& eval) {
    if (cube.anchor < 0)
        throw std::invalid_argument("pointwise_beta_bound_check: cube has no phi(Q) anchor");
    BetaBoundCheck out;
    cplx z = cube.center();
    out.lhs = std::abs(eval.dbchi(z));
    out.lhs2 = std::abs(eval.d2bchi_boundary(z));
    const DyadicTree& tree = profile.tree();
    for (int id : tree.ancestors_inclusive(cube.anchor)) {
        const DyadicNode& n = tree.node(id);
        double beta = profile.at(id).beta1;
        out.beta_sum += beta / n.length;
        out.beta_sum2 += beta / (n.length * n.length);
    }
    double diam = domain.diameter();
    out.diam_term = std::isfinite(diam) ? 1.0 / diam : 0.0;
    double den = out.beta_sum + out.diam_term;
    double den2 = out.beta_sum2 + out.diam_term * out.diam_term;
    out.ratio = den > 0.0 ? out.lhs / den : 0.0;
    out.ratio2 = den2 > 0.0 ? out.lhs2 / den2 : 0.0;
    return out;
}

}  // namespace beurlab
