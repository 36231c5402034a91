#include "rojet/convolver.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace rojet {

namespace {
// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct StepConvolver::Impl {
    std::size_t m = 0;
    std::size_t nc = 0;           // m/2 + 1 complex bins
    double* real = nullptr;       // scratch, length m
    fftw_complex* freq = nullptr; // scratch, length nc
    fftw_complex* spec = nullptr; // step spectrum scaled by 1/m, length nc
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(const GridDensity& step) : m(step.size()), nc(step.size() / 2 + 1) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        real = fftw_alloc_real(m);
        freq = fftw_alloc_complex(nc);
        spec = fftw_alloc_complex(nc);
        if (!real || !freq || !spec) {
            release();
            throw std::bad_alloc();
        }
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(m), real, freq, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(m), freq, real, FFTW_ESTIMATE);
        if (!fwd || !bwd) {
            release();
            throw std::runtime_error("fftw plan creation failed");
        }
        std::memcpy(real, step.coeffs().data(), m * sizeof(double));
        fftw_execute(fwd);
        const double inv_m = 1.0 / static_cast<double>(m);
        for (std::size_t k = 0; k < nc; ++k) {
            spec[k][0] = freq[k][0] * inv_m;  // fold the c2r 1/m scale into the spectrum
            spec[k][1] = freq[k][1] * inv_m;
        }
    }

    void release() noexcept {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(freq);
        fftw_free(spec);
        fwd = bwd = nullptr;
        real = nullptr;
        freq = spec = nullptr;
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        release();
    }
};

StepConvolver::StepConvolver(const GridDensity& step)
    : m_(step.size()), impl_(std::make_unique<Impl>(step)) {}

StepConvolver::~StepConvolver() = default;
StepConvolver::StepConvolver(StepConvolver&&) noexcept = default;
StepConvolver& StepConvolver::operator=(StepConvolver&&) noexcept = default;

void StepConvolver::apply(std::vector<double>& v) {
    if (v.size() != m_) throw std::invalid_argument("vector size does not match convolver grid");
    Impl& im = *impl_;
    std::memcpy(im.real, v.data(), m_ * sizeof(double));
    fftw_execute(im.fwd);
    for (std::size_t k = 0; k < im.nc; ++k) {
        const double re = im.freq[k][0] * im.spec[k][0] - im.freq[k][1] * im.spec[k][1];
        const double imag = im.freq[k][0] * im.spec[k][1] + im.freq[k][1] * im.spec[k][0];
        im.freq[k][0] = re;
        im.freq[k][1] = imag;
    }
    fftw_execute(im.bwd);
    std::memcpy(v.data(), im.real, m_ * sizeof(double));
}

}  // namespace rojet
