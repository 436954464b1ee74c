#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beurlab/besov.hpp"
#include "beurlab/beta.hpp"
#include "beurlab/beurling.hpp"
#include "beurlab/whitney.hpp"

namespace beurlab {

enum class EnergyKind { weighted_derivative, fractional_sobolev, besov_energy };

struct CubeContribution {
    int level = 0;
    std::int64_t ix = 0, iy = 0;
    double cx = 0.0, cy = 0.0;
    double dist = 0.0;
    double dbchi_abs = 0.0;
    double contribution = 0.0;  // value^p units
};

struct EnergyReport {
    EnergyKind kind = EnergyKind::weighted_derivative;
    SeminormParams params;
    double value = 0.0;        // (cube_sum + collar_estimate)^{1/p}
    double cube_sum = 0.0;     // value^p units
    double collar_estimate = 0.0;
    double collar_low = 0.0, collar_high = 0.0;  // reported interval
    double outside_box_tail = 0.0;               // graphs: analytic bound, not folded in
    double restricted_sum = 0.0;  // besov kind: pairs with |x-y| <= ell(Q_x)
    double mc_rel_std_error = 0.0;
    std::vector<CubeContribution> ledger;

    void write_ledger_csv(const std::string& path) const;
};

/// Weighted derivative energy int |dBchi|^p dist^{p - alpha p} dm over the
/// Whitney cubes (tensor Gauss-Legendre per cube, samples_per_side 3 or 5),
/// plus the measured-plateau collar closure over the uncovered collar cells.
EnergyReport weighted_energy(const PlaneDomain& domain, SeminormParams params,
                             const WhitneyDecomposition& whitney, int samples_per_side = 3);

struct McBudget {
    int samples_per_stratum = 8;
    int strata_out = 9;        // dyadic annuli beyond dist/2
    int points_per_cube = 4;   // x quadrature points per cube (<= 9)
    std::uint64_t seed = 1;
};

/// || D^alpha Bchi ||_{L^p}^p by stratified Monte Carlo over Whitney cubes;
/// Bchi differences evaluated as path integrals of the boundary formula.
EnergyReport frac_sobolev_energy(const PlaneDomain& domain, SeminormParams params,
                                 const WhitneyDecomposition& whitney, const BchiEvaluator& eval,
                                 const McBudget& budget);

/// The section-6 Besov energy of Bchi over Omega x Omega, same sampling; also
/// reports the |x-y| <= ell(Q_x) restricted estimator.
EnergyReport besov_energy(const PlaneDomain& domain, SeminormParams params,
                          const WhitneyDecomposition& whitney, const BchiEvaluator& eval,
                          const McBudget& budget);

struct BetaBoundCheck {
    double lhs = 0.0;       // |dBchi(z_Q)|
    double beta_sum = 0.0;  // sum over ancestors of phi(Q) of beta/ell
    double diam_term = 0.0; // 1/diam(Omega), 0 for unbounded
    double ratio = 0.0;
    double lhs2 = 0.0;        // |d2Bchi(z_Q)|
    double beta_sum2 = 0.0;   // sum of beta/ell^2
    double ratio2 = 0.0;
};

/// Both sides of the pointwise beta bounds at the cube center; the cube must
/// already carry its phi(Q) anchor into `profile`'s tree.
BetaBoundCheck pointwise_beta_bound_check(const PlaneDomain& domain, const WhitneyCube& cube,
                                          const BetaProfile& profile, const BchiEvaluator& eval);

}  // namespace beurlab
