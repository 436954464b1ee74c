#pragma once

#include <vector>

#include "beurlab/common.hpp"

namespace beurlab {

struct ScaleRange {
    double t_min = 0.0;
    double t_max = 0.0;
    int scales_per_octave = 4;
};

/// Per-scale band output of the psi_t convolution bank.
struct Band {
    double t = 0.0;
    double log_weight = 0.0;        // trapezoid weight in log t
    std::vector<double> values;     // psi_t * f on the bank grid
    double lp_norm_p = 0.0;         // ||psi_t * f||_p^p (grid quadrature)
};

struct BankOutput {
    std::vector<Band> bands;
    double wrap_energy_fraction = 0.0;  // linear-convolution guard, must be < 1e-6
    double grid_origin = 0.0;
    double grid_step = 0.0;
};

/// FFT convolution bank with cached spectral multipliers
/// psi_hat_t(xi) = c t^2 xi^2 exp(-2 pi t |xi|) on the discrete frequency grid.
class SpectralBank {
  public:
    /// Grid is taken from the signal; scales form a geometric 2^{1/spo} grid.
    SpectralBank(const SampledFunction& signal_spec, ScaleRange range);
    ~SpectralBank();
    SpectralBank(const SpectralBank&) = delete;
    SpectralBank& operator=(const SpectralBank&) = delete;

    const std::vector<double>& scales() const { return scales_; }
    std::size_t fft_size() const { return m_; }

    /// Multipliers are real and even in xi for psi; exposed for symmetry tests.
    const std::vector<double>& multiplier(std::size_t scale_idx) const {
        return multipliers_[scale_idx];
    }

    /// Per-scale convolutions of f (must match the bank grid). Throws when
    /// the grid fails the aliasing precondition (step > t_min/4) or the
    /// padding wraparound detector fires.
    BankOutput convolve(const SampledFunction& f, double p) const;

  private:
    double origin_, step_;
    std::size_t n_signal_, m_, offset_;
    std::vector<double> scales_;
    std::vector<double> log_weights_;
    std::vector<std::vector<double>> multipliers_;  // per scale, r2c layout (m/2+1 reals)
};

/// Scale integral (sum over t of (t^{-order} ||psi_t*f||_p)^p dlog t)^{1/p}:
/// the engine behind besov_littlewood_paley.
double square_function(const SampledFunction& f, const SpectralBank& bank, double order, double p);

/// Discrete Hilbert transform via the -i sgn(xi) multiplier.
std::vector<double> hilbert_transform(const std::vector<double>& v, double step);

}  // namespace beurlab
