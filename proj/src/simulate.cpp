#include "rojet/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "rojet/rng.hpp"

namespace rojet {

namespace {

void check_config(const SimConfig& cfg) {
    validate(cfg.params);
    if (cfg.n < 1) throw std::invalid_argument("bit count n must be >= 1");
    if (cfg.x0 && !(*cfg.x0 >= 0.0 && *cfg.x0 < 1.0))
        throw std::invalid_argument("x0 must lie in [0,1)");
}

template <typename EmitBit>
void run_walk(const SimConfig& cfg, EmitBit&& emit) {
    Xoshiro256pp rng(cfg.seed);
    double x = cfg.x0 ? *cfg.x0 : rng.uniform01();
    const double sigma = std::sqrt(cfg.params.sigma2);
    const double f = cfg.params.f;
    for (std::uint64_t i = 0; i < cfg.burn_in; ++i) {
        x = mod1(x + f + sigma * inverse_normal_cdf(rng.uniform01_open()));
    }
    for (std::uint64_t i = 0; i < cfg.n; ++i) {
        x = mod1(x + f + sigma * inverse_normal_cdf(rng.uniform01_open()));
        emit(x, static_cast<std::uint8_t>(x < cfg.params.d ? 1 : 0));
    }
}

}  // namespace

BitStream simulate(const SimConfig& cfg) {
    check_config(cfg);
    BitStream bs;
    bs.bits.reserve(cfg.n);
    run_walk(cfg, [&](double, std::uint8_t z) { bs.bits.push_back(z); });
    return bs;
}

SimTrace simulate_with_phases(const SimConfig& cfg) {
    check_config(cfg);
    SimTrace tr;
    tr.bits.bits.reserve(cfg.n);
    tr.phases.reserve(cfg.n);
    {
        // replicate the x0 draw so the trace records it
        Xoshiro256pp rng(cfg.seed);
        tr.x0 = cfg.x0 ? *cfg.x0 : rng.uniform01();
    }
    run_walk(cfg, [&](double x, std::uint8_t z) {
        tr.bits.bits.push_back(z);
        tr.phases.push_back(x);
    });
    return tr;
}

}  // namespace rojet
