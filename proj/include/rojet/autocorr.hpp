#pragma once

#include "rojet/params.hpp"

namespace rojet {

// Probabilities of adjacent bit pairs (z_i, z_{i+1}).
struct PairProbs {
    double p00 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;
};

// Indefinite integral S_1(x) of the one-step erf-difference density,
// truncated to the tailcut index range. p11 = S_1(D) - S_1(0).
double s1(double x, const SourceParams& p, Tailcut tc = {});

// Closed-form adjacent pair probabilities. p01 = p10 = D - p11 and
// p00 = 1 - 2D + p11; the quadruple is clamped into [0,1] and renormalized
// when tailcut truncation leaves a deviation above kEpsNorm.
PairProbs pair_probs(const SourceParams& p, Tailcut tc = {});

// Delay-k autocorrelation C_k = 2 Pr(z_i = z_{i+k}) - 1, computed as C_1 of
// the substituted parameters (k*F mod 1, D, k*sigma2), re-canonicalized.
// Returns 0 exactly once k*sigma2 > 100 (decorrelation is far below double
// precision long before).
double c_k(const SourceParams& p, int k, Tailcut tc = {});

// Measured or analytic autocorrelation by lag; values[0] is the bias term
// (approximates 2D-1).
struct AutocorrVector {
    std::vector<double> values;

    int k_max() const noexcept { return static_cast<int>(values.size()) - 1; }
};

// Empirical estimator over a finite bit sequence:
//   values[k] = 1/(n-k) * sum (2 z_i - 1)(2 z_{i+k} - 1)   for k >= 1,
//   values[0] = mean of (2 z_i - 1).
AutocorrVector estimate_autocorr(const BitStream& bits, int k_max);

}  // namespace rojet
