#pragma once

#include <cstdint>
#include <optional>

#include "rojet/params.hpp"

namespace rojet {

// Monte Carlo generation of the sampling process: phase walks by a Gaussian
// step of mean F and variance sigma2 each sample, reduced mod 1, and the bit
// is 1 when the phase lands below D. sigma2 = 0 is accepted here (the walk
// is then deterministic); F may be raw (non-canonical).
struct SimConfig {
    SourceParams params;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    // Initial phase; when absent it is drawn uniformly from the seeded
    // generator (the stationary choice).
    std::optional<double> x0;
    std::uint64_t burn_in = 0;
};

BitStream simulate(const SimConfig& cfg);

// Same walk, additionally exposing the phases x_1..x_n and the start phase.
struct SimTrace {
    BitStream bits;
    std::vector<double> phases;
    double x0 = 0.0;
};

SimTrace simulate_with_phases(const SimConfig& cfg);

}  // namespace rojet
