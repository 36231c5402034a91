#include "rojet/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rojet {

namespace {

constexpr double kFlatSigma2 = 9.0;  // wrapped Gaussian is flat to ~2^-255 here

struct Objective {
    double d;
    std::vector<double> target;  // measured lags 1..k_fit
    Tailcut tc;

    double residual(double f, double log_s2) const {
        const double s2 = std::exp(log_s2);
        const SourceParams p{f, d, s2};
        double r = 0.0;
        for (std::size_t k = 0; k < target.size(); ++k) {
            const double diff = c_k(p, static_cast<int>(k) + 1, tc) - target[k];
            r += diff * diff;
        }
        return r;
    }

    void residual_vec(double f, double log_s2, std::vector<double>& out) const {
        const double s2 = std::exp(log_s2);
        const SourceParams p{f, d, s2};
        out.resize(target.size());
        for (std::size_t k = 0; k < target.size(); ++k)
            out[k] = c_k(p, static_cast<int>(k) + 1, tc) - target[k];
    }
};

struct LocalOpt {
    double f = 0.0;
    double log_s2 = 0.0;
    double residual = 0.0;
};

constexpr double kLogS2Floor = -18.5;  // ~ln(1e-8), the analytic minimum
constexpr double kLogS2Ceil = 4.7;     // ~ln(100), far past decorrelation

// Damped Gauss-Newton on (F, log sigma2) with a central-difference Jacobian.
LocalOpt refine(const Objective& obj, double f, double log_s2) {
    std::vector<double> r0, rp, rm;
    obj.residual_vec(f, log_s2, r0);
    double rss = 0.0;
    for (double v : r0) rss += v * v;
    double lambda = 1e-6;
    const std::size_t nk = r0.size();
    for (int iter = 0; iter < 200; ++iter) {
        constexpr double h = 1e-7;
        std::vector<double> jf(nk), jl(nk);
        obj.residual_vec(std::min(f + h, 0.5), log_s2, rp);
        obj.residual_vec(std::max(f - h, 0.0), log_s2, rm);
        const double df = std::min(f + h, 0.5) - std::max(f - h, 0.0);
        for (std::size_t k = 0; k < nk; ++k) jf[k] = (rp[k] - rm[k]) / df;
        obj.residual_vec(f, log_s2 + h, rp);
        obj.residual_vec(f, log_s2 - h, rm);
        for (std::size_t k = 0; k < nk; ++k) jl[k] = (rp[k] - rm[k]) / (2.0 * h);

        double a00 = 0.0, a01 = 0.0, a11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (std::size_t k = 0; k < nk; ++k) {
            a00 += jf[k] * jf[k];
            a01 += jf[k] * jl[k];
            a11 += jl[k] * jl[k];
            g0 += jf[k] * r0[k];
            g1 += jl[k] * r0[k];
        }
        const double scale = std::max({a00, a11, 1e-300});

        bool moved = false;
        for (int tries = 0; tries < 40; ++tries) {
            const double m00 = a00 + lambda * scale;
            const double m11 = a11 + lambda * scale;
            const double det = m00 * m11 - a01 * a01;
            if (!(std::abs(det) > 0.0)) {
                lambda *= 10.0;
                continue;
            }
            const double step_f = (-g0 * m11 + g1 * a01) / det;
            const double step_l = (-g1 * m00 + g0 * a01) / det;
            const double fn = std::clamp(f + step_f, 0.0, 0.5);
            const double ln = std::clamp(log_s2 + step_l, kLogS2Floor, kLogS2Ceil);
            obj.residual_vec(fn, ln, rp);
            double rss_n = 0.0;
            for (double v : rp) rss_n += v * v;
            if (rss_n < rss) {
                const bool tiny = (rss - rss_n) < 1e-18 &&
                                  std::abs(fn - f) < 1e-10 && std::abs(ln - log_s2) < 1e-10;
                f = fn;
                log_s2 = ln;
                rss = rss_n;
                r0 = rp;
                lambda = std::max(lambda * 0.3, 1e-14);
                moved = !tiny;
                break;
            }
            lambda *= 10.0;
        }
        if (!moved) break;
    }
    return LocalOpt{f, log_s2, rss};
}

// Leading-Fourier-term inversion: with the independence baseline removed,
// c_1 ~ u cos(2 pi F) and c_2 ~ u^2 cos(4 pi F) in units of 8 (sin(pi D)/pi)^2,
// where u = exp(-2 pi^2 sigma2). Solvable in closed form; exact enough to
// seed the refinement whenever sigma2 is large.
std::optional<LocalOpt> fourier_seed(const Objective& obj, double base) {
    if (obj.target.size() < 2) return std::nullopt;
    const double sd = std::sin(std::numbers::pi * obj.d) / std::numbers::pi;
    const double gamma1 = 8.0 * sd * sd;
    const double r1 = (obj.target[0] - base) / gamma1;
    const double r2 = (obj.target[1] - base) / gamma1;
    const double u2 = 2.0 * r1 * r1 - r2;
    if (!(u2 > 1e-200)) return std::nullopt;
    const double u = std::sqrt(u2);
    if (!(u < 1.0)) return std::nullopt;
    const double s2 = -std::log(u) / (2.0 * std::numbers::pi * std::numbers::pi);
    if (!(s2 >= kSigma2Min)) return std::nullopt;
    const double c = std::clamp(r1 / u, -1.0, 1.0);
    const double f = std::acos(c) / (2.0 * std::numbers::pi);
    LocalOpt seed;
    seed.f = f;
    seed.log_s2 = std::log(s2);
    seed.residual = obj.residual(seed.f, seed.log_s2);
    return seed;
}

}  // namespace

AutocorrVector model_autocorr(const SourceParams& p, int k_max, Tailcut tc) {
    require_analytic(p);
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    AutocorrVector ac;
    ac.values.resize(static_cast<std::size_t>(k_max) + 1);
    ac.values[0] = 2.0 * p.d - 1.0;
    for (int k = 1; k <= k_max; ++k)
        ac.values[static_cast<std::size_t>(k)] = c_k(p, k, tc);
    return ac;
}

FitResult fit_params(const AutocorrVector& measured, int k_fit, FitOptions opts) {
    if (k_fit < 3)
        throw std::invalid_argument("k_fit must be >= 3 (three unknowns)");
    if (measured.k_max() < k_fit)
        throw std::invalid_argument("measured vector must cover lags 0.." +
                                    std::to_string(k_fit));

    FitResult res;
    res.k_used = k_fit;

    const double d_hat = std::clamp((measured.values[0] + 1.0) / 2.0, 1e-3, 1.0 - 1e-3);
    // Deviation of the measured lags from the independent-bits baseline
    // (2D-1)^2; below the noise floor sigma2 is unidentifiable.
    const double base = (2.0 * d_hat - 1.0) * (2.0 * d_hat - 1.0);
    double max_dev = 0.0;
    for (int k = 1; k <= k_fit; ++k)
        max_dev = std::max(max_dev,
                           std::abs(measured.values[static_cast<std::size_t>(k)] - base));
    const double noise_floor =
        opts.stream_length ? 5.0 / std::sqrt(static_cast<double>(*opts.stream_length)) : 1e-9;
    if (max_dev < noise_floor) {
        res.params = SourceParams{0.0, d_hat, kFlatSigma2};
        res.converged = false;
        res.sigma2_lower_bound = kFlatSigma2;
        double rss = 0.0;
        for (int k = 1; k <= k_fit; ++k) {
            const double diff = measured.values[static_cast<std::size_t>(k)] - base;
            rss += diff * diff;
        }
        res.residual = rss;
        return res;
    }

    Objective obj;
    obj.d = d_hat;
    obj.tc = opts.tailcut;
    obj.target.assign(measured.values.begin() + 1, measured.values.begin() + 1 + k_fit);

    // Coarse grid over F x log sigma2.
    const int nf = std::max(opts.grid_f, 2);
    const int ns = std::max(opts.grid_sigma2, 2);
    const double llo = std::log(opts.sigma2_lo);
    const double lhi = std::log(opts.sigma2_hi);
    struct Cell {
        double f, l, r;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(nf) * static_cast<std::size_t>(ns));
    for (int i = 0; i < nf; ++i) {
        const double f = (i + 0.5) / nf * 0.5;
        for (int j = 0; j < ns; ++j) {
            const double l = llo + (lhi - llo) * j / (ns - 1);
            cells.push_back({f, l, obj.residual(f, l)});
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.r < b.r; });

    // Keep the best few cells that are spatially separated, as starts.
    std::vector<Cell> starts;
    for (const Cell& c : cells) {
        bool near = false;
        for (const Cell& s : starts)
            if (std::abs(c.f - s.f) < 0.02 && std::abs(c.l - s.l) < 0.5) near = true;
        if (!near) starts.push_back(c);
        if (starts.size() >= 4) break;
    }
    if (auto seed = fourier_seed(obj, base))
        starts.push_back({seed->f, seed->log_s2, seed->residual});

    std::vector<LocalOpt> optima;
    for (const Cell& s : starts) optima.push_back(refine(obj, s.f, s.l));
    std::sort(optima.begin(), optima.end(),
              [](const LocalOpt& a, const LocalOpt& b) { return a.residual < b.residual; });

    for (const LocalOpt& o : optima) {
        const SourceParams cand = canonicalize(o.f, d_hat, std::exp(o.log_s2));
        bool dup = false;
        for (const FitCandidate& seen : res.candidates)
            if (std::abs(seen.params.f - cand.f) < 1e-6 &&
                std::abs(std::log(seen.params.sigma2) - std::log(cand.sigma2)) < 1e-6)
                dup = true;
        if (!dup) res.candidates.push_back(FitCandidate{cand, o.residual});
    }

    res.params = res.candidates.front().params;
    res.residual = res.candidates.front().residual;
    res.converged = true;
    return res;
}

}  // namespace rojet
