#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beurlab/beta.hpp"
#include "beurlab/common.hpp"
#include "beurlab/plane_domain.hpp"
#include "beurlab/spectral_bank.hpp"

namespace beurlab {

struct SeminormParams {
    double alpha = 0.6;  // paper's alpha, in (0, 1]
    double p = 3.0;      // in (1, inf)
    double s = 0.0;      // the order actually computed by a backend call

    static SeminormParams make(double alpha, double p, double s);
    void validate() const;  // throws unless alpha in (0,1], p in (1,inf), alpha*p > 1
};

enum class SeminormBackend { differences, dorronsoro, littlewood_paley };

struct SeminormReport {
    double value = 0.0;
    SeminormBackend backend = SeminormBackend::differences;
    SeminormParams params;
    // discretization record
    double grid_step = 0.0;
    int depth = 0;
    double h_min = 0.0, h_max = 0.0;
    double t_min = 0.0, t_max = 0.0;
    // separated truncation/correction terms (value^p units)
    double near_diagonal_correction = 0.0;
    double far_tail = 0.0;
    double coarse_tail = 0.0;
    double fine_tail = 0.0;
    double error_estimate = 0.0;

    std::string to_json() const;
};

/// ||f||_{B^s_{p,p}} via the first-difference double integral restricted to
/// h in [h_min, h_max]; requires 0 < s < 1 and a compactly supported f.
/// The far tail (exact once h_max exceeds the support width) is added to the
/// value; the near-diagonal band is excluded and reported as a Richardson
/// correction.
SeminormReport besov_differences(const SampledFunction& f, SeminormParams params, double h_min,
                                 double h_max);

/// Dorronsoro beta-sum over a finite profile: (sum (beta/ell^{s-1})^p ell)^{1/p}
/// for 0 < s < 2, with coarse/fine truncation terms reported separately.
SeminormReport besov_dorronsoro(const BetaProfile& profile, SeminormParams params);

/// Littlewood-Paley square function at order params.s (the engine is
/// kernels::square_function; scale grid 2^{1/4} over the given range, or the
/// default [4*step, 4*support_length]).
SeminormReport besov_littlewood_paley(const SampledFunction& f, SeminormParams params,
                                      std::optional<ScaleRange> range = std::nullopt);

/// Sampled outward unit normal along the boundary with arc-length weights.
struct BoundarySampling {
    std::vector<cplx> points;
    std::vector<cplx> normals;  // outward unit normals
    std::vector<double> weights;  // H^1 weights
};

BoundarySampling normal_field(const PlaneDomain& domain, std::size_t samples = 0);

struct NormalBesovReport {
    SeminormReport report;                 // the N double integral
    double aprime_proxy = 0.0;             // graphs: ||A'||_{B^s_{p,p}} via differences
    double proxy_ratio = 0.0;              // graphs: proxy / value
};

/// || N ||_{B^{alpha - 1/p}_{p,p}(boundary)} by the chordal double integral;
/// for graph domains also the Lemma-lemanorm A' proxy and comparability ratio.
NormalBesovReport normal_besov(const PlaneDomain& domain, SeminormParams params,
                               std::size_t samples = 0);

struct LeibnizReport {
    double left = 0.0;        // ||phi f||_{B^s}^p (differences backend)
    double right_diff = 0.0;  // iint |phi(x) Delta_h f(x)|^p / h^{sp+1}
    double right_norm = 0.0;  // ||phi||_{B^s}^p ||f||_inf^p
    double ratio = 0.0;       // left / (2^{p-1} (right_diff + right_norm))
};

/// Both sides of the product inequality behind Lemma lemaux1, evaluated with
/// the shared h-window; the explicit constant 2^{p-1} comes from the proof's
/// splitting of Delta_h(phi f).
LeibnizReport leibniz_bound_check(const SampledFunction& phi, const SampledFunction& f,
                                  SeminormParams params, double h_min, double h_max);

/// Per-scale/per-level CSV of a report's contribution ledger.
void write_contributions_csv(const std::string& path,
                             const std::vector<std::pair<double, double>>& scale_contrib,
                             const std::string& scale_name);

}  // namespace beurlab
