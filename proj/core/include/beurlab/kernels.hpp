#pragma once

#include <string>

#include "beurlab/common.hpp"

namespace beurlab {

enum class KernelFamily { K, J, Psi, Phi, Poisson, ConjugatePoisson };

/// One-parameter kernel family at scale t. Mother shapes:
///   psi(x) = (3x^2 - 1)/(x^2 + 1)^3,      psi_t(x) = t^{-1} psi(x/t)
///   K_t(x) = t x/(x^2 + t^2)^2,           (K_t)' = -t^{-2} psi_t
///   J_t(x) = (t^2 - x^2)/(x^2 + t^2)^2,   phi_t = t^2 (J_t)'
struct Kernel {
    KernelFamily family = KernelFamily::Psi;
    double t = 1.0;

    double operator()(double x) const;
};

double kernel_eval(const Kernel& k, double x);

/// Pinned constants relating the kernels to the Poisson pair; derived
/// analytically and re-verified by startup quadrature (see constants() docs).
struct KernelConstants {
    double psi_hat_c;        // psi_hat_t(xi) = psi_hat_c * t^2 xi^2 e^{-2 pi t |xi|}
    double k_from_poisson;   // K_t = k_from_poisson * (P_t)'
    double j_from_conjugate; // J_t = j_from_conjugate * (Q_t)'
    double hilbert_scalar;   // phi_t = hilbert_scalar * H(psi_t)
    double psi_hat_quadrature_check;  // |quadrature(psi_hat(1)) - pinned| (filled at startup)
};

const KernelConstants& kernel_constants();

/// Fourier transform of psi_t in the e^{-2 pi i x xi} convention.
double psi_hat(double t, double xi);

struct RelationReport {
    double kprime_vs_psi_sup_err = 0.0;   // sup |(K_t)' + t^{-2} psi_t| / sup |psi_t/t^2|
    double hilbert_scalar_fit = 0.0;      // least-squares scalar c in phi_t = c H(psi_t)
    double hilbert_residual = 0.0;        // relative L2 residual of the fit
    double psi_integral_tail = 0.0;       // |int_{-R}^{R} psi| for the grid's R
};

/// Finite-difference/FFT verification of the kernel identities on a grid
/// covering [-R, R] with the given step (must resolve t: step <= t/8).
RelationReport relation_checks(double R, double step, double t);

}  // namespace beurlab
