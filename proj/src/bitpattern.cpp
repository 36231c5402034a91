#include "rojet/bitpattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rojet/convolver.hpp"
#include "rojet/stepdist.hpp"

namespace rojet {

ChopMasks chop_masks(double d, int m) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("duty cycle D must lie in (0,1)");
    if (m < kMinGridSize || !is_pow2(static_cast<std::size_t>(m)))
        throw std::invalid_argument("grid size must be a power of two >= 64");
    ChopMasks cm;
    cm.g0.resize(static_cast<std::size_t>(m));
    cm.g1.resize(static_cast<std::size_t>(m));
    const double md = static_cast<double>(m) * d;
    for (int j = 0; j < m; ++j) {
        const double g1 = std::clamp(md - static_cast<double>(j), 0.0, 1.0);
        cm.g1[static_cast<std::size_t>(j)] = g1;
        cm.g0[static_cast<std::size_t>(j)] = 1.0 - g1;
    }
    return cm;
}

namespace {

double mass_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

// Shared state for one chop-and-convolve walk: masks, cached step spectrum,
// and the cumulative negative mass clamped after inverse transforms.
class PatternEngine {
public:
    PatternEngine(const SourceParams& p, int m, Tailcut tc)
        : m_(static_cast<std::size_t>(m)),
          masks_(chop_masks(p.d, m)),
          conv_(step_grid(p, m, tc)) {}

    std::size_t size() const noexcept { return m_; }

    void chop(std::vector<double>& v, int bit) const {
        const auto& g = bit ? masks_.g1 : masks_.g0;
        for (std::size_t i = 0; i < m_; ++i) v[i] *= g[i];
    }

    double chopped_mass(const std::vector<double>& v, int bit) const {
        const auto& g = bit ? masks_.g1 : masks_.g0;
        double q = 0.0;
        for (std::size_t i = 0; i < m_; ++i) q += v[i] * g[i];
        return q;
    }

    void convolve(std::vector<double>& v) {
        conv_.apply(v);
        double neg = 0.0;
        for (double& x : v) {
            if (x < 0.0) {
                neg -= x;
                x = 0.0;
            }
        }
        clamped_ += neg;
        if (clamped_ > 1e-6)
            throw std::domain_error("cumulative clamped negative mass " +
                                    std::to_string(clamped_) +
                                    " exceeds 1e-6; grid too coarse for these parameters");
    }

    std::vector<double> uniform() const {
        return std::vector<double>(m_, 1.0 / static_cast<double>(m_));
    }

private:
    std::size_t m_;
    ChopMasks masks_;
    StepConvolver conv_;
    double clamped_ = 0.0;
};

}  // namespace

PatternResult pattern_probability(const SourceParams& p, const BitStream& pattern, int m,
                                  Tailcut tc) {
    if (pattern.empty()) throw std::invalid_argument("pattern must be nonempty");
    PatternEngine eng(p, m, tc);
    std::vector<double> v = eng.uniform();
    for (auto bit : pattern.bits) {
        eng.chop(v, bit);
        eng.convolve(v);
    }
    PatternResult res;
    res.pattern = pattern;
    res.probability = mass_of(v);
    res.conditional = GridDensity::from_coeffs(std::move(v));
    return res;
}

std::uint32_t pattern_to_index(const BitStream& pattern) {
    if (pattern.size() > 32) throw std::invalid_argument("pattern too long for an index");
    std::uint32_t idx = 0;
    for (auto b : pattern.bits) idx = (idx << 1) | b;
    return idx;
}

BitStream index_to_pattern(std::uint32_t index, int n) {
    BitStream bs;
    bs.bits.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        bs.bits[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1u);
    return bs;
}

std::vector<double> all_patterns(const SourceParams& p, int n, int m, Tailcut tc) {
    if (n < 1 || n > kAllPatternsMaxN)
        throw std::invalid_argument("pattern length must lie in 1.." +
                                    std::to_string(kAllPatternsMaxN));
    PatternEngine eng(p, m, tc);
    std::vector<double> out(std::size_t{1} << n);

    // Depth-first over the pattern tree so each prefix density is computed once.
    auto rec = [&](auto&& self, const std::vector<double>& v, int depth,
                   std::uint32_t prefix) -> void {
        if (depth == n) {
            out[prefix] = mass_of(v);
            return;
        }
        for (int bit = 0; bit < 2; ++bit) {
            std::vector<double> t = v;
            eng.chop(t, bit);
            eng.convolve(t);
            self(self, t, depth + 1, (prefix << 1) | static_cast<std::uint32_t>(bit));
        }
    };
    rec(rec, eng.uniform(), 0, 0);
    return out;
}

PatternResult maxprob_pattern_depthfirst(const SourceParams& p, int n, int m, Tailcut tc) {
    if (n < 1) throw std::invalid_argument("pattern length must be >= 1");
    PatternEngine eng(p, m, tc);
    std::vector<double> v = eng.uniform();
    PatternResult res;
    res.pattern.bits.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double q0 = eng.chopped_mass(v, 0);
        const double q1 = eng.chopped_mass(v, 1);
        int bit;
        if (std::abs(q0 - q1) < 1e-12) {
            bit = 0;
            ++res.ties;
        } else {
            bit = q1 > q0 ? 1 : 0;
        }
        eng.chop(v, bit);
        eng.convolve(v);
        res.pattern.bits.push_back(static_cast<std::uint8_t>(bit));
    }
    res.probability = mass_of(v);
    res.conditional = GridDensity::from_coeffs(std::move(v));
    return res;
}

BitStream peak_path_pattern(const SourceParams& p, int n, double x0) {
    validate(p);
    if (!(x0 >= 0.0 && x0 < 1.0)) throw std::invalid_argument("x0 must lie in [0,1)");
    if (n < 1) throw std::invalid_argument("pattern length must be >= 1");
    BitStream bs;
    bs.bits.reserve(static_cast<std::size_t>(n));
    double x = x0;
    for (int i = 0; i < n; ++i) {
        x = mod1(x + p.f);
        bs.bits.push_back(static_cast<std::uint8_t>(x < p.d ? 1 : 0));
    }
    return bs;
}

}  // namespace rojet
