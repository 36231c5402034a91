#pragma once

#include <cstdint>
#include <vector>

#include "rojet/params.hpp"

namespace rojet {

// Conditioning masks on the grid: g1 covers [0, D) (bit = 1), g0 its
// complement. The cell containing the duty-cycle boundary gets the
// fractional weight max(min(mD - j, 1), 0), so g0 + g1 = 1 pointwise and
// sum(g1) = mD.
struct ChopMasks {
    std::vector<double> g0;
    std::vector<double> g1;
};

ChopMasks chop_masks(double d, int m);

// One evaluated bit pattern: its probability mass and the (unnormalized)
// phase density after observing it, whose mass equals the probability.
struct PatternResult {
    BitStream pattern;
    double probability = 0.0;
    GridDensity conditional;
    // greedy search only: number of steps where |q0 - q1| < 1e-12
    int ties = 0;
};

// Chop-and-convolve evaluation of Pr(Z_n = pattern): start from the uniform
// phase density, then per bit mask by g_{z_i} and cyclically convolve with
// the step grid (whose spectrum is computed once and reused).
PatternResult pattern_probability(const SourceParams& p, const BitStream& pattern,
                                  int m = kDefaultGridSize, Tailcut tc = {});

// Probabilities of all 2^n patterns, sharing prefix densities via
// depth-first traversal. Index encodes the pattern with z_1 as the most
// significant bit. n is capped at 20 (memory guard).
std::vector<double> all_patterns(const SourceParams& p, int n, int m = kDefaultGridSize,
                                 Tailcut tc = {});

inline constexpr int kAllPatternsMaxN = 20;

std::uint32_t pattern_to_index(const BitStream& pattern);
BitStream index_to_pattern(std::uint32_t index, int n);

// Greedy depth-first search: at each step keep the bit with the larger
// chopped mass. A heuristic lower bound on max_z p_z -- the true maximizer
// is not always reachable this way. Ties (within 1e-12) resolve to bit 0
// and are counted in the result.
PatternResult maxprob_pattern_depthfirst(const SourceParams& p, int n,
                                         int m = kDefaultGridSize, Tailcut tc = {});

// Zero-jitter threshold walk x_i = x_{i-1} + F (mod 1) from x0; the peak
// probability path used as an alternative pattern guess.
BitStream peak_path_pattern(const SourceParams& p, int n, double x0);

}  // namespace rojet
