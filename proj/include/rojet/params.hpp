#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rojet {

// Thresholds shared across modules.
inline constexpr double kSigma2Min = 1e-8;  // analytic ops reject sigma2 below this
inline constexpr double kEpsNorm = 1e-9;    // density mass tolerance
inline constexpr double kEpsNeg = 1e-12;    // transform round-off clamp threshold
inline constexpr int kDefaultGridSize = 4096;
inline constexpr int kMinGridSize = 64;

// One noise source and its bit sampler: relative oscillator frequency f
// (canonical range [0, 1/2]), duty cycle d in (0,1), and per-sample
// accumulated jitter variance sigma2 (time measured in sampling periods).
struct SourceParams {
    double f = 0.0;
    double d = 0.5;
    double sigma2 = 0.0;
};

// x reduced to [0,1).
double mod1(double x) noexcept;

// Reduce f mod 1, then fold f > 1/2 down to 1-f. Rejects d outside (0,1),
// negative sigma2 and non-finite inputs.
SourceParams canonicalize(double f_raw, double d, double sigma2);

// Basic validity: finite f, d in (0,1), sigma2 >= 0.
void validate(const SourceParams& p);

// validate() plus sigma2 >= kSigma2Min. The wrapped Gaussian below that
// degenerates to a point mass the grid cannot represent.
void require_analytic(const SourceParams& p);

// Truncation radius, in standard deviations, for wrapped-Gaussian sums.
// Truncation error ~ erfc(tau/sqrt(2)); tau=10 is ample for doubles.
struct Tailcut {
    double tau = 10.0;
};

// Summation index range floor(-tau*sigma) <= i <= ceil(tau*sigma).
struct TailRange {
    int lo = 0;
    int hi = 0;
};
TailRange tail_range(double sigma, Tailcut tc);

bool is_pow2(std::size_t m) noexcept;

// Probability density discretized on the unit circle. coeffs[i] approximates
// the mass of cell [i/m, (i+1)/m). Full densities carry mass ~1, conditional
// densities (after chopping) anything in [0, 1].
class GridDensity {
public:
    GridDensity() = default;

    // Takes ownership of the coefficients. Negatives in [-kEpsNeg, 0) are
    // transform round-off and clamped to zero; anything more negative throws.
    static GridDensity from_coeffs(std::vector<double> coeffs);

    // Uniform density 1/m per cell.
    static GridDensity uniform(std::size_t m);

    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double mass() const noexcept { return mass_; }

    // Scale so the mass is exactly 1 (no-op contractually for full densities).
    void normalize();

private:
    std::vector<double> coeffs_;
    double mass_ = 0.0;
};

// Ordered output bits z_1..z_n, one byte per bit (values 0/1).
struct BitStream {
    std::vector<std::uint8_t> bits;

    BitStream() = default;
    explicit BitStream(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    static BitStream from_string(std::string_view s);  // e.g. "00111"
    std::string to_string() const;

    std::size_t size() const noexcept { return bits.size(); }
    bool empty() const noexcept { return bits.empty(); }
};

}  // namespace rojet
