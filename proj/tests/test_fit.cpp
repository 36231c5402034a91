#include <doctest.h>

#include <cmath>

#include "rojet/fit.hpp"
#include "rojet/rng.hpp"
#include "rojet/simulate.hpp"

using namespace rojet;

TEST_CASE("model autocorrelation vector") {
    const AutocorrVector flat = model_autocorr(canonicalize(0.2, 0.5, 9.0), 8);
    CHECK(flat.values[0] == 0.0);
    for (int k = 1; k <= 8; ++k)
        CHECK(std::abs(flat.values[static_cast<std::size_t>(k)]) <= 1e-9);

    const AutocorrVector biased = model_autocorr(canonicalize(0.1, 0.625, 0.04), 4);
    CHECK(biased.values[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(biased.values[1] == doctest::Approx(0.31796738681).epsilon(1e-9));
}

TEST_CASE("noiseless analytic round trip recovers the parameters") {
    // published pair-probability example parameters, tight tolerance
    const SourceParams truth = canonicalize(0.1, 0.625, 0.04);
    const FitResult r = fit_params(model_autocorr(truth, 8), 8);
    CHECK(r.converged);
    CHECK(std::abs(r.params.f - truth.f) <= 1e-4);
    CHECK(std::abs(r.params.d - truth.d) <= 1e-4);
    CHECK(std::abs(r.params.sigma2 - truth.sigma2) <= 1e-4);

    Xoshiro256pp rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const double f = 0.02 + 0.46 * rng.uniform01();
        const double d = 0.3 + 0.4 * rng.uniform01();
        const double s2 = 0.005 * std::pow(0.5 / 0.005, rng.uniform01());
        const SourceParams t = canonicalize(f, d, s2);
        const FitResult fr = fit_params(model_autocorr(t, 8), 8);
        CHECK(fr.converged);
        CHECK(std::abs(fr.params.f - t.f) <= 1e-3);
        CHECK(std::abs(fr.params.d - t.d) <= 1e-3);
        CHECK(std::abs(fr.params.sigma2 - t.sigma2) <= 1e-3);
    }
}

TEST_CASE("returned optimum is at least as good as the truth") {
    Xoshiro256pp rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const SourceParams t = canonicalize(0.02 + 0.46 * rng.uniform01(),
                                            0.3 + 0.4 * rng.uniform01(),
                                            0.005 + 0.3 * rng.uniform01());
        const AutocorrVector meas = model_autocorr(t, 8);
        const FitResult fr = fit_params(meas, 8);
        double truth_resid = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double diff = c_k(t, k) - meas.values[static_cast<std::size_t>(k)];
            truth_resid += diff * diff;
        }
        CHECK(fr.residual <= truth_resid + 1e-12);
    }
}

TEST_CASE("fits are invariant under F canonicalization of the source") {
    const AutocorrVector a = model_autocorr(canonicalize(0.7, 0.55, 0.03), 8);
    const AutocorrVector b = model_autocorr(canonicalize(0.3, 0.55, 0.03), 8);
    for (int k = 0; k <= 8; ++k)
        CHECK(std::abs(a.values[static_cast<std::size_t>(k)] -
                       b.values[static_cast<std::size_t>(k)]) <= 1e-12);
    const FitResult fa = fit_params(a, 8);
    const FitResult fb = fit_params(b, 8);
    CHECK(std::abs(fa.params.f - fb.params.f) <= 1e-9);
    CHECK(std::abs(fa.params.sigma2 - fb.params.sigma2) <= 1e-9);
}

TEST_CASE("flat measurements are reported unidentifiable") {
    AutocorrVector zero;
    zero.values.assign(9, 0.0);
    const FitResult r = fit_params(zero, 8);
    CHECK_FALSE(r.converged);
    REQUIRE(r.sigma2_lower_bound.has_value());
    CHECK(*r.sigma2_lower_bound == doctest::Approx(9.0));
    CHECK(r.params.sigma2 >= 9.0);
    CHECK(r.params.d == doctest::Approx(0.5));

    // same verdict when the floor comes from the stream length
    AutocorrVector faint;
    faint.values.assign(9, 0.0);
    faint.values[1] = 1e-3;
    FitOptions opts;
    opts.stream_length = 1000000;  // noise floor 5/sqrt(n) = 5e-3
    const FitResult r2 = fit_params(faint, 8, opts);
    CHECK_FALSE(r2.converged);
}

TEST_CASE("simulated round trip recovers F and sigma2 at binomial accuracy") {
    const SourceParams truth = canonicalize(0.3, 0.5, 0.01);
    SimConfig cfg;
    cfg.params = truth;
    cfg.n = 10000000;
    cfg.seed = 31337;
    const BitStream bits = simulate(cfg);
    const AutocorrVector meas = estimate_autocorr(bits, 8);
    FitOptions opts;
    opts.stream_length = bits.size();
    const FitResult r = fit_params(meas, 8, opts);
    CHECK(r.converged);
    CHECK(std::abs(r.params.f - truth.f) <= 0.01);
    CHECK(std::abs(r.params.d - truth.d) <= 0.01);
    CHECK(std::abs(r.params.sigma2 - truth.sigma2) / truth.sigma2 <= 0.20);
}

TEST_CASE("fit rejects unusable inputs") {
    AutocorrVector short_vec;
    short_vec.values.assign(3, 0.1);
    CHECK_THROWS_AS(fit_params(short_vec, 8), std::invalid_argument);
    CHECK_THROWS_AS(fit_params(short_vec, 2), std::invalid_argument);
}
