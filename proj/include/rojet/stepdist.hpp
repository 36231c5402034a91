#pragma once

#include "rojet/params.hpp"

namespace rojet {

// Extrema of the wrapped-Gaussian step density f_s: the maximum sits at
// phase F, the minimum at F + 1/2 (mod 1). max_dev = max(f_max-1, 1-f_min)
// bounds the total variation distance to uniform. For sigma >= 1 the
// deviation underflows doubles quickly, so log2_max_dev is computed from the
// dominant Fourier term 2*exp(-2*pi^2*sigma^2) of the wrapped Gaussian.
struct StepExtrema {
    double f_min = 0.0;
    double f_max = 0.0;
    double max_dev = 0.0;
    double log2_max_dev = 0.0;
};

// 1-periodic wrapped-Gaussian step density at phase x, truncated to the
// tailcut index range.
double step_density(const SourceParams& p, double x, Tailcut tc = {});

// Evaluates the two known extremal points (F cancels; uses F=0 at x=0, 1/2).
StepExtrema step_extrema(double sigma, Tailcut tc = {});

// Discretized step density s_j = f_s(j/m)/m, renormalized to mass exactly 1.
GridDensity step_grid(const SourceParams& p, int m = kDefaultGridSize, Tailcut tc = {});

}  // namespace rojet
