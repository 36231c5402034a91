#include "rojet/autocorr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rojet {

namespace {

// phi(t) = t erf(t) + exp(-t^2)/sqrt(pi), the antiderivative kernel of erf.
inline double phi(double t) {
    return t * std::erf(t) + std::exp(-t * t) * std::numbers::inv_sqrtpi;
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double s1(double x, const SourceParams& p, Tailcut tc) {
    require_analytic(p);
    const double sigma = std::sqrt(p.sigma2);
    const double c = std::sqrt(2.0 * p.sigma2);
    const double f = mod1(p.f);
    const TailRange r = tail_range(sigma, tc);
    // phi(a_i) - phi(b_i) tends to +-D/c as i -> +-inf; summing the +-i pairs
    // from the outside in keeps the partial sums small.
    const int n_out = std::max(-r.lo, r.hi);
    double sum = 0.0;
    for (int i = n_out; i >= 1; --i) {
        for (int j : {i, -i}) {
            if (j < r.lo || j > r.hi) continue;
            const double a = (x + j - f) / c;
            const double b = (x + j - f - p.d) / c;
            sum += phi(a) - phi(b);
        }
    }
    sum += phi((x - f) / c) - phi((x - f - p.d) / c);
    return 0.5 * c * sum;
}

PairProbs pair_probs(const SourceParams& p, Tailcut tc) {
    const double p11 = clamp01(s1(p.d, p, tc) - s1(0.0, p, tc));
    PairProbs q;
    q.p11 = p11;
    q.p01 = clamp01(p.d - p11);
    q.p10 = q.p01;
    q.p00 = clamp01(1.0 - 2.0 * p.d + p11);
    const double sum = q.p00 + q.p01 + q.p10 + q.p11;
    const double dev = std::abs(sum - 1.0);
    if (dev > 1e-6)
        throw std::domain_error("pair probabilities deviate from unity by " +
                                std::to_string(dev) + "; increase the tailcut");
    if (dev > kEpsNorm) {
        const double inv = 1.0 / sum;
        q.p00 *= inv;
        q.p01 *= inv;
        q.p10 *= inv;
        q.p11 *= inv;
    }
    return q;
}

double c_k(const SourceParams& p, int k, Tailcut tc) {
    require_analytic(p);
    if (k < 1) throw std::invalid_argument("lag k must be >= 1");
    const double ks2 = static_cast<double>(k) * p.sigma2;
    if (ks2 > 100.0) return 0.0;
    const SourceParams sub = canonicalize(mod1(static_cast<double>(k) * p.f), p.d, ks2);
    const double p11 = s1(sub.d, sub, tc) - s1(0.0, sub, tc);
    return 4.0 * (p11 - sub.d) + 1.0;
}

AutocorrVector estimate_autocorr(const BitStream& bits, int k_max) {
    const auto n = static_cast<std::int64_t>(bits.size());
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (n <= k_max)
        throw std::invalid_argument("bit sequence too short: need more than " +
                                    std::to_string(k_max) + " bits, got " + std::to_string(n));
    AutocorrVector ac;
    ac.values.resize(static_cast<std::size_t>(k_max) + 1);

    std::int64_t ones = 0;
    for (auto b : bits.bits) ones += b;
    ac.values[0] = static_cast<double>(2 * ones - n) / static_cast<double>(n);

    for (int k = 1; k <= k_max; ++k) {
        // (2z_i-1)(2z_{i+k}-1) is +1 on agreement, -1 otherwise
        std::int64_t disagree = 0;
        const std::size_t end = bits.size() - static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < end; ++i)
            disagree += bits.bits[i] ^ bits.bits[i + static_cast<std::size_t>(k)];
        const std::int64_t terms = n - k;
        ac.values[static_cast<std::size_t>(k)] =
            static_cast<double>(terms - 2 * disagree) / static_cast<double>(terms);
    }
    return ac;
}

}  // namespace rojet
