#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rojet/params.hpp"

namespace rojet {

enum class EntropyMethod { exhaustive, greedy_maxprob };

std::string to_string(EntropyMethod m);

// Entropy metrics of the n-bit pattern distribution Z_n. h1 is absent when
// the distribution was not enumerated (greedy method).
struct EntropyReport {
    int n = 0;
    std::optional<double> h1;      // Shannon entropy, bits
    double hinf = 0.0;             // min-entropy, bits
    std::optional<double> h1_rate; // h1 / n
    double hinf_rate = 0.0;        // hinf / n
    std::optional<double> h0;      // max-entropy (support count), exhaustive only
    EntropyMethod method = EntropyMethod::exhaustive;
};

// -log2 of the largest probability. Entries must be non-negative with at
// least one positive; exact zeros are impossible outcomes and are skipped.
double min_entropy(std::span<const double> probabilities);

// -sum p log2 p in bits; zero entries contribute 0. The input must sum to 1
// within 1e-6.
double shannon_entropy(std::span<const double> probabilities);

// log2 of the number of outcomes with probability above 1e-12.
double hartley_entropy(std::span<const double> probabilities);

// H1(Z_n)/n for n = 1..n_max; non-increasing by subadditivity of joint
// Shannon entropy (the analogous min-entropy sequence is not monotone).
std::vector<double> entropy_rate_chain(const SourceParams& p, int n_max,
                                       int m = kDefaultGridSize, Tailcut tc = {});

// Per-bit entropy report for the source, by full enumeration (n <= 20) or by
// the greedy maximum-mass pattern search.
EntropyReport entropy_report(const SourceParams& p, int n, EntropyMethod method,
                             int m = kDefaultGridSize, Tailcut tc = {});

// Frequency-independent lower bounds driven by the probability p_e of
// predicting the next bit from exact knowledge of the previous phase
// (F = 0, D = 1/2 reduction). baudet_h1_lb is the two-term reference bound
// evaluated at Q = sigma2, for comparison only.
struct LowerBounds {
    double p_e = 0.0;
    double h1_lb = 0.0;        // binary entropy of p_e
    double hinf_lb = 0.0;      // -log2 p_e
    double tanh_pe_ub = 0.0;   // looser bound: p_e <= 1 - tanh(pi*sigma)/2
    double baudet_h1_lb = 0.0;
};

LowerBounds prediction_bounds(double sigma2, Tailcut tc = {});

// Two-term reference Shannon bound 1 - (4/(pi^2 ln 2)) exp(-4 pi^2 Q); the
// exponentially smaller remainder is omitted. Never falls below ~0.415, so
// it is unsafe for low-jitter sources.
double baudet_bound(double q);

}  // namespace rojet
