#include "rojet/params.hpp"

#include <cmath>
#include <stdexcept>

namespace rojet {

double mod1(double x) noexcept {
    double r = x - std::floor(x);
    // floor(x) == x for integral x, but guard the x = -eps rounding case
    if (r >= 1.0) r -= 1.0;
    return r;
}

static void check_d_sigma2(double d, double sigma2) {
    if (!std::isfinite(d) || d <= 0.0 || d >= 1.0)
        throw std::invalid_argument("duty cycle D must lie in (0,1), got " + std::to_string(d));
    if (!std::isfinite(sigma2) || sigma2 < 0.0)
        throw std::invalid_argument("sigma2 must be finite and >= 0, got " + std::to_string(sigma2));
}

SourceParams canonicalize(double f_raw, double d, double sigma2) {
    if (!std::isfinite(f_raw))
        throw std::invalid_argument("F must be finite");
    check_d_sigma2(d, sigma2);
    double f = mod1(f_raw);
    if (f > 0.5) f = 1.0 - f;
    return SourceParams{f, d, sigma2};
}

void validate(const SourceParams& p) {
    if (!std::isfinite(p.f))
        throw std::invalid_argument("F must be finite");
    check_d_sigma2(p.d, p.sigma2);
}

void require_analytic(const SourceParams& p) {
    validate(p);
    if (p.sigma2 < kSigma2Min)
        throw std::domain_error(
            "sigma2 = " + std::to_string(p.sigma2) +
            " is below the analytic minimum 1e-8; the wrapped Gaussian degenerates "
            "to a point mass (use the simulator for the noiseless walk)");
}

TailRange tail_range(double sigma, Tailcut tc) {
    if (!(tc.tau > 0.0))
        throw std::invalid_argument("tailcut tau must be positive");
    return TailRange{static_cast<int>(std::floor(-tc.tau * sigma)),
                     static_cast<int>(std::ceil(tc.tau * sigma))};
}

bool is_pow2(std::size_t m) noexcept { return m != 0 && (m & (m - 1)) == 0; }

static void check_grid_size(std::size_t m) {
    if (m < static_cast<std::size_t>(kMinGridSize) || !is_pow2(m))
        throw std::invalid_argument("grid size must be a power of two >= 64, got " +
                                    std::to_string(m));
}

GridDensity GridDensity::from_coeffs(std::vector<double> coeffs) {
    check_grid_size(coeffs.size());
    GridDensity g;
    double mass = 0.0;
    for (double& c : coeffs) {
        if (c < 0.0) {
            if (c < -kEpsNeg)
                throw std::invalid_argument("density coefficient " + std::to_string(c) +
                                            " below round-off tolerance");
            c = 0.0;
        }
        mass += c;
    }
    g.coeffs_ = std::move(coeffs);
    g.mass_ = mass;
    return g;
}

GridDensity GridDensity::uniform(std::size_t m) {
    check_grid_size(m);
    GridDensity g;
    g.coeffs_.assign(m, 1.0 / static_cast<double>(m));
    g.mass_ = 1.0;
    return g;
}

void GridDensity::normalize() {
    if (mass_ <= 0.0)
        throw std::domain_error("cannot normalize a density with zero mass");
    const double inv = 1.0 / mass_;
    for (double& c : coeffs_) c *= inv;
    mass_ = 1.0;
}

BitStream BitStream::from_string(std::string_view s) {
    BitStream bs;
    bs.bits.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            bs.bits.push_back(0);
        else if (c == '1')
            bs.bits.push_back(1);
        else
            throw std::invalid_argument(std::string("invalid bit character '") + c + "'");
    }
    return bs;
}

std::string BitStream::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace rojet
