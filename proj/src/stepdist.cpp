#include "rojet/stepdist.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rojet {

double step_density(const SourceParams& p, double x, Tailcut tc) {
    require_analytic(p);
    const double sigma = std::sqrt(p.sigma2);
    const double u = mod1(x) - mod1(p.f);  // u in (-1, 1), peak within tail range
    const TailRange r = tail_range(sigma, tc);
    const double inv2s2 = 1.0 / (2.0 * p.sigma2);
    double sum = 0.0;
    for (int i = r.lo; i <= r.hi; ++i) {
        const double t = u + static_cast<double>(i);
        sum += std::exp(-t * t * inv2s2);
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * p.sigma2);
}

StepExtrema step_extrema(double sigma, Tailcut tc) {
    if (!(sigma * sigma >= kSigma2Min))
        throw std::domain_error("sigma below analytic minimum");
    const SourceParams p{0.0, 0.5, sigma * sigma};
    StepExtrema e;
    e.f_max = step_density(p, 0.0, tc);
    e.f_min = step_density(p, 0.5, tc);
    e.max_dev = std::max(e.f_max - 1.0, 1.0 - e.f_min);
    if (sigma >= 1.0) {
        // Leading Fourier term of the wrapped Gaussian; the direct sum loses
        // the deviation to cancellation right around here.
        constexpr double two_pi2 = 2.0 * std::numbers::pi * std::numbers::pi;
        e.log2_max_dev = 1.0 - two_pi2 * sigma * sigma / std::numbers::ln2;
        e.max_dev = std::exp2(e.log2_max_dev);
    } else {
        e.log2_max_dev = std::log2(e.max_dev);
    }
    return e;
}

GridDensity step_grid(const SourceParams& p, int m, Tailcut tc) {
    require_analytic(p);
    if (m < kMinGridSize || !is_pow2(static_cast<std::size_t>(m)))
        throw std::invalid_argument("grid size must be a power of two >= 64");
    std::vector<double> s(static_cast<std::size_t>(m));
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int j = 0; j < m; ++j)
        s[static_cast<std::size_t>(j)] = step_density(p, j * inv_m, tc) * inv_m;
    GridDensity g = GridDensity::from_coeffs(std::move(s));
    g.normalize();
    return g;
}

}  // namespace rojet
