#include "beurlab/spectral_bank.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "beurlab/kernels.hpp"

namespace beurlab {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace

SpectralBank::SpectralBank(const SampledFunction& signal_spec, ScaleRange range)
    : origin_(signal_spec.origin), step_(signal_spec.step), n_signal_(signal_spec.size()) {
    if (range.t_min <= 0.0 || range.t_max < range.t_min)
        throw std::invalid_argument("SpectralBank: bad scale range");
    if (range.scales_per_octave < 1)
        throw std::invalid_argument("SpectralBank: scales_per_octave must be >= 1");

    double ratio = std::exp2(1.0 / double(range.scales_per_octave));
    for (double t = range.t_min; t <= range.t_max * (1.0 + 1e-12); t *= ratio) scales_.push_back(t);
    if (scales_.size() < 2) scales_.push_back(range.t_min * ratio);

    double dlt = std::log(ratio);
    log_weights_.assign(scales_.size(), dlt);
    log_weights_.front() = 0.5 * dlt;
    log_weights_.back() = 0.5 * dlt;

    auto pad = std::size_t(std::ceil(8.0 * scales_.back() / step_));
    m_ = next_pow2(4 * (n_signal_ + pad));
    offset_ = (m_ - n_signal_) / 2;

    multipliers_.resize(scales_.size());
    for (std::size_t s = 0; s < scales_.size(); ++s) {
        auto& mult = multipliers_[s];
        mult.resize(m_ / 2 + 1);
        for (std::size_t k = 0; k < mult.size(); ++k) {
            double xi = double(k) / (double(m_) * step_);
            mult[k] = psi_hat(scales_[s], xi);
        }
    }
}

SpectralBank::~SpectralBank() = default;

BankOutput SpectralBank::convolve(const SampledFunction& f, double p) const {
    if (std::abs(f.origin - origin_) > 1e-12 || std::abs(f.step - step_) > 1e-15 ||
        f.size() != n_signal_)
        throw std::invalid_argument("SpectralBank::convolve: signal grid does not match the bank");
    if (step_ > scales_.front() / 4.0 * (1.0 + 1e-12))
        throw std::invalid_argument("SpectralBank::convolve: aliasing check failed (step > t_min/4)");

    std::vector<double> in(m_, 0.0);
    std::copy(f.values.begin(), f.values.end(), in.begin() + std::ptrdiff_t(offset_));

    std::vector<cplx> spec(m_ / 2 + 1);
    fftw_plan fwd, bwd;
    std::vector<double> out(m_);
    std::vector<cplx> work(m_ / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(int(m_), in.data(), reinterpret_cast<fftw_complex*>(spec.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(int(m_), reinterpret_cast<fftw_complex*>(work.data()), out.data(),
                                   FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    BankOutput res;
    res.grid_origin = origin_ - double(offset_) * step_;
    res.grid_step = step_;
    res.bands.resize(scales_.size());
    double total_energy = 0.0, wrap_energy = 0.0;
    std::size_t guard = std::max<std::size_t>(4, m_ / 128);

    for (std::size_t s = 0; s < scales_.size(); ++s) {
        const auto& mult = multipliers_[s];
        for (std::size_t k = 0; k < work.size(); ++k) work[k] = spec[k] * mult[k];
        fftw_execute(bwd);
        Band& band = res.bands[s];
        band.t = scales_[s];
        band.log_weight = log_weights_[s];
        band.values.resize(m_);
        double lp = 0.0;
        for (std::size_t j = 0; j < m_; ++j) {
            double v = out[j] / double(m_);
            band.values[j] = v;
            lp += std::pow(std::abs(v), p);
            double e = v * v;
            total_energy += e;
            if (j < guard || j + guard >= m_) wrap_energy += e;
        }
        band.lp_norm_p = lp * step_;
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    res.wrap_energy_fraction = total_energy > 0.0 ? wrap_energy / total_energy : 0.0;
    if (res.wrap_energy_fraction > 1e-6)
        throw std::runtime_error("SpectralBank::convolve: padding insufficient (wraparound detected)");
    return res;
}

double square_function(const SampledFunction& f, const SpectralBank& bank, double order, double p) {
    BankOutput out = bank.convolve(f, p);
    double acc = 0.0;
    for (const Band& b : out.bands)
        acc += std::pow(b.t, -order * p) * b.lp_norm_p * b.log_weight;
    return std::pow(acc, 1.0 / p);
}

std::vector<double> hilbert_transform(const std::vector<double>& v, double step) {
    std::size_t n = v.size();
    std::size_t m = next_pow2(4 * n);
    std::vector<cplx> buf(m, cplx{});
    std::size_t off = (m - n) / 2;
    for (std::size_t i = 0; i < n; ++i) buf[off + i] = v[i];

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_1d(int(m), reinterpret_cast<fftw_complex*>(buf.data()),
                               reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(int(m), reinterpret_cast<fftw_complex*>(buf.data()),
                               reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
                               FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    for (std::size_t k = 0; k < m; ++k) {
        double sgn = (k == 0 || 2 * k == m) ? 0.0 : (k < m / 2 ? 1.0 : -1.0);
        buf[k] *= cplx(0.0, -sgn);
    }
    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    std::vector<double> outv(n);
    for (std::size_t i = 0; i < n; ++i) outv[i] = buf[off + i].real() / double(m);
    (void)step;
    return outv;
}

}  // namespace beurlab
