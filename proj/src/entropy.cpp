#include "rojet/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rojet/autocorr.hpp"
#include "rojet/bitpattern.hpp"

namespace rojet {

std::string to_string(EntropyMethod m) {
    return m == EntropyMethod::exhaustive ? "exhaustive" : "greedy-maxprob";
}

double min_entropy(std::span<const double> probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("empty probability set");
    double max_p = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw std::invalid_argument("negative probability");
        max_p = std::max(max_p, p);
    }
    if (max_p <= 0.0) throw std::invalid_argument("all probabilities are zero");
    return -std::log2(max_p);
}

double shannon_entropy(std::span<const double> probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("empty probability set");
    double sum = 0.0;
    double h = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw std::invalid_argument("negative probability");
        sum += p;
        if (p > 0.0) h -= p * std::log2(p);
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("probabilities sum to " + std::to_string(sum) +
                                    ", not normalized");
    return h;
}

double hartley_entropy(std::span<const double> probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("empty probability set");
    std::size_t support = 0;
    for (double p : probabilities) {
        if (p < 0.0) throw std::invalid_argument("negative probability");
        if (p > 1e-12) ++support;
    }
    if (support == 0) throw std::invalid_argument("empty support");
    return std::log2(static_cast<double>(support));
}

std::vector<double> entropy_rate_chain(const SourceParams& p, int n_max, int m, Tailcut tc) {
    if (n_max < 1 || n_max > kAllPatternsMaxN)
        throw std::invalid_argument("n_max must lie in 1..20");
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const auto probs = all_patterns(p, n, m, tc);
        rates.push_back(shannon_entropy(probs) / static_cast<double>(n));
    }
    return rates;
}

EntropyReport entropy_report(const SourceParams& p, int n, EntropyMethod method, int m,
                             Tailcut tc) {
    EntropyReport rep;
    rep.n = n;
    rep.method = method;
    if (method == EntropyMethod::exhaustive) {
        const auto probs = all_patterns(p, n, m, tc);
        rep.hinf = min_entropy(probs);
        rep.h1 = shannon_entropy(probs);
        rep.h0 = hartley_entropy(probs);
        rep.h1_rate = *rep.h1 / n;
    } else {
        const auto best = maxprob_pattern_depthfirst(p, n, m, tc);
        rep.hinf = -std::log2(best.probability);
    }
    rep.hinf_rate = rep.hinf / n;
    return rep;
}

LowerBounds prediction_bounds(double sigma2, Tailcut tc) {
    const SourceParams p = canonicalize(0.0, 0.5, sigma2);
    require_analytic(p);
    LowerBounds lb;
    // S_1(0) = -S_1(1/2) under the F=0, D=1/2 symmetry, hence the factor 4.
    lb.p_e = std::clamp(4.0 * s1(0.5, p, tc), 0.5, 1.0);
    lb.hinf_lb = -std::log2(lb.p_e);
    const double q = 1.0 - lb.p_e;
    lb.h1_lb = (q > 0.0) ? -lb.p_e * std::log2(lb.p_e) - q * std::log2(q) : 0.0;
    lb.tanh_pe_ub = 1.0 - 0.5 * std::tanh(std::numbers::pi * std::sqrt(sigma2));
    lb.baudet_h1_lb = baudet_bound(sigma2);
    return lb;
}

double baudet_bound(double q) {
    if (!(q >= 0.0)) throw std::invalid_argument("quality factor Q must be >= 0");
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    return 1.0 - 4.0 / (pi2 * std::numbers::ln2) * std::exp(-4.0 * pi2 * q);
}

}  // namespace rojet
