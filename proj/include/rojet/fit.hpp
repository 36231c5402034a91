#pragma once

#include <cstdint>
#include <optional>

#include "rojet/autocorr.hpp"
#include "rojet/params.hpp"

namespace rojet {

struct FitCandidate {
    SourceParams params;
    double residual = 0.0;
};

// Outcome of matching a measured autocorrelation vector to the model.
// When the measured lags carry no signal above the noise floor, sigma2 is
// unidentifiable: converged is false and sigma2_lower_bound holds the
// flatness threshold instead of a point estimate.
struct FitResult {
    SourceParams params;
    double residual = 0.0;
    int k_used = 0;
    bool converged = false;
    std::vector<FitCandidate> candidates;  // ranked local optima, best first
    std::optional<double> sigma2_lower_bound;
};

struct FitOptions {
    // Measured stream length, when known; sets the identifiability noise
    // floor to 5/sqrt(length) (binomial standard error scale).
    std::optional<std::uint64_t> stream_length;
    int grid_f = 256;         // coarse cells over F in [0, 1/2]
    int grid_sigma2 = 64;     // coarse cells over log sigma2
    double sigma2_lo = 1e-6;  // coarse grid range
    double sigma2_hi = 10.0;
    Tailcut tailcut{};
};

// Analytic autocorrelation vector of the model: values[0] = 2D-1,
// values[k] = C_k for k >= 1.
AutocorrVector model_autocorr(const SourceParams& p, int k_max, Tailcut tc = {});

// Least-squares recovery of (F, D, sigma2) from measured autocorrelation.
// D comes in closed form from the bias term; (F, sigma2) minimize the sum of
// squared differences over lags 1..k_fit, by coarse grid search refined with
// damped Gauss-Newton from the best separated cells (plus a closed-form seed
// from the leading Fourier coefficients, which carries the large-sigma2
// regime where the objective is a narrow ridge).
FitResult fit_params(const AutocorrVector& measured, int k_fit = 8, FitOptions opts = {});

}  // namespace rojet
