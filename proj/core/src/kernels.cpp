#include "beurlab/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "beurlab/quadrature.hpp"
#include "beurlab/spectral_bank.hpp"

namespace beurlab {

namespace {

double psi_mother(double x) {
    double q = x * x + 1.0;
    return (3.0 * x * x - 1.0) / (q * q * q);
}

double phi_mother(double x) {
    // phi = t^2 (J_t)' at t = 1: J'(x) = (2x^3 - 6x)/(x^2+1)^3
    double q = x * x + 1.0;
    return 2.0 * x * (x * x - 3.0) / (q * q * q);
}

}  // namespace

double Kernel::operator()(double x) const { return kernel_eval(*this, x); }

double kernel_eval(const Kernel& k, double x) {
    if (k.t <= 0.0) throw std::invalid_argument("kernel_eval: scale must be positive");
    double t = k.t;
    double q = x * x + t * t;
    switch (k.family) {
        case KernelFamily::K:
            return t * x / (q * q);
        case KernelFamily::J:
            return (t * t - x * x) / (q * q);
        case KernelFamily::Psi:
            return psi_mother(x / t) / t;
        case KernelFamily::Phi:
            return phi_mother(x / t) / t;
        case KernelFamily::Poisson:
            return t / (pi * q);
        case KernelFamily::ConjugatePoisson:
            return x / (pi * q);
    }
    return 0.0;
}

double psi_hat(double t, double xi) {
    return kernel_constants().psi_hat_c * t * t * xi * xi * std::exp(-2.0 * pi * t * std::abs(xi));
}

namespace {

/// int psi(x) e^{-2 pi i x} dx at xi = 1, by quadrature (psi is even, so the
/// transform is real: 2 int_0^inf psi cos(2 pi x) dx).
double psi_hat_at_one_by_quadrature() {
    auto f = [](double x) { return psi_mother(x) * std::cos(2.0 * pi * x); };
    double acc = 0.0;
    double a = 0.0;
    for (double b : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 256.0, 2048.0}) {
        acc += adaptive_quad(f, a, b, 1e-14);
        a = b;
    }
    // tail beyond 2048: |psi| <= 3/x^4
    return 2.0 * acc;
}

KernelConstants make_constants() {
    KernelConstants c;
    c.psi_hat_c = -2.0 * pi * pi * pi;  // from K_t = -(pi/2)(P_t)' and (K_t)' = -t^{-2} psi_t
    c.k_from_poisson = -0.5 * pi;
    c.j_from_conjugate = pi;
    c.hilbert_scalar = 2.0;
    double quad = psi_hat_at_one_by_quadrature();
    double pinned = c.psi_hat_c * std::exp(-2.0 * pi);
    c.psi_hat_quadrature_check = std::abs(quad - pinned);
    return c;
}

}  // namespace

const KernelConstants& kernel_constants() {
    static const KernelConstants c = make_constants();
    return c;
}

RelationReport relation_checks(double R, double step, double t) {
    if (step > t / 8.0) throw std::invalid_argument("relation_checks: grid does not resolve t");
    RelationReport rep;

    // (K_t)' vs -t^{-2} psi_t by central differences
    Kernel K{KernelFamily::K, t}, Psi{KernelFamily::Psi, t};
    double h = step * 1e-2;
    double sup_err = 0.0, sup_ref = 0.0;
    for (double x = -R; x <= R; x += step) {
        double d = (kernel_eval(K, x + h) - kernel_eval(K, x - h)) / (2.0 * h);
        double ref = -kernel_eval(Psi, x) / (t * t);
        sup_err = std::max(sup_err, std::abs(d - ref));
        sup_ref = std::max(sup_ref, std::abs(ref));
    }
    rep.kprime_vs_psi_sup_err = sup_err / sup_ref;

    // phi_t vs c * H(psi_t) with H computed by FFT multiplier -i sgn(xi)
    auto n = std::size_t(std::llround(2.0 * R / step)) + 1;
    std::vector<double> psiv(n), phiv(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = -R + double(i) * step;
        psiv[i] = kernel_eval(Psi, x);
        phiv[i] = kernel_eval(Kernel{KernelFamily::Phi, t}, x);
    }
    std::vector<double> Hpsi = hilbert_transform(psiv, step);
    double num = 0.0, den = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += Hpsi[i] * phiv[i];
        den += Hpsi[i] * Hpsi[i];
        ref2 += phiv[i] * phiv[i];
    }
    rep.hilbert_scalar_fit = den > 0.0 ? num / den : 0.0;
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = phiv[i] - rep.hilbert_scalar_fit * Hpsi[i];
        res2 += r * r;
    }
    rep.hilbert_residual = ref2 > 0.0 ? std::sqrt(res2 / ref2) : 0.0;

    // int_{-R}^{R} psi: exact antiderivative of psi is x(x^2+1)^{-2}... use quadrature
    rep.psi_integral_tail =
        std::abs(adaptive_quad([&](double x) { return kernel_eval(Psi, x); }, -R, R, 1e-12));
    return rep;
}

}  // namespace beurlab
