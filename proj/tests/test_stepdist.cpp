#include <doctest.h>

#include <cmath>

#include "rojet/stepdist.hpp"

using namespace rojet;

TEST_CASE("extrema table reproduces to six decimals") {
    struct Row {
        double sigma, f_min, f_max;
    };
    const Row rows[] = {{0.10, 0.000030, 3.989423},
                        {0.20, 0.175283, 1.994726},
                        {0.30, 0.663191, 1.340089},
                        {0.50, 0.985616, 1.014384},
                        {0.75, 0.999970, 1.000030}};
    for (const Row& r : rows) {
        const StepExtrema e = step_extrema(r.sigma);
        CHECK(std::abs(e.f_min - r.f_min) <= 1e-6);
        CHECK(std::abs(e.f_max - r.f_max) <= 1e-6);
        CHECK(e.f_min <= 1.0);
        CHECK(e.f_max >= 1.0);
        CHECK(e.max_dev >= 0.0);
    }
}

TEST_CASE("log2 range exponents for large sigma") {
    struct Row {
        double sigma, log2_dev;
    };
    const Row rows[] = {{1.00, -27.47766},
                        {1.50, -63.07473},
                        {2.00, -112.9106},
                        {2.50, -176.9854},
                        {3.00, -255.2989}};
    for (const Row& r : rows)
        CHECK(std::abs(step_extrema(r.sigma).log2_max_dev - r.log2_dev) <= 0.01);
    // direct and log-space paths agree where both are representable
    const StepExtrema e1 = step_extrema(1.0);
    CHECK(std::abs((e1.f_max - 1.0) - e1.max_dev) <= 1e-10 * e1.max_dev + 1e-16);
}

TEST_CASE("density evaluates the table extrema at shifted F") {
    const SourceParams p = canonicalize(0.3, 0.5, 0.01);  // sigma = 0.1
    CHECK(std::abs(step_density(p, 0.3) - 3.989423) <= 1e-6);
    const SourceParams q = canonicalize(0.3, 0.5, 0.04);  // sigma = 0.2
    CHECK(std::abs(step_density(q, 0.8) - 0.175283) <= 1e-6);
    const SourceParams flat = canonicalize(0.17, 0.5, 9.0);
    for (double x : {0.0, 0.25, 0.77})
        CHECK(std::abs(step_density(flat, x) - 1.0) <= 1e-12);
}

TEST_CASE("density is 1-periodic by construction") {
    const SourceParams p = canonicalize(0.12, 0.5, 0.09);
    for (double x : {0.0, 0.3, 0.99}) {
        CHECK(step_density(p, x) == step_density(p, x + 1.0));
        CHECK(step_density(p, x) == step_density(p, x - 1.0));
    }
}

TEST_CASE("density is symmetric around the peak when F = 0") {
    const SourceParams p = canonicalize(0.0, 0.5, 0.0225);
    for (int i = 1; i < 16; ++i) {
        const double x = i / 32.0;
        CHECK(std::abs(step_density(p, x) - step_density(p, 1.0 - x)) <= 1e-12);
    }
}

TEST_CASE("midpoint mass approaches one before renormalization") {
    for (double sigma : {0.05, 0.1, 0.3, 1.0, 3.0}) {
        const SourceParams p = canonicalize(0.21, 0.5, sigma * sigma);
        const int m = 4096;
        double mass = 0.0;
        for (int j = 0; j < m; ++j) mass += step_density(p, static_cast<double>(j) / m) / m;
        CHECK(std::abs(mass - 1.0) <= 1e-6);
    }
}

TEST_CASE("step grid normalizes to unit mass") {
    const SourceParams p = canonicalize(0.0, 0.5, 0.04);
    const GridDensity g = step_grid(p, 4096);
    CHECK(g.mass() == 1.0);
    double sum = 0.0;
    for (double c : g.coeffs()) sum += c;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(std::abs(g.coeffs()[0] * 4096.0 - 1.994726) <= 1e-6);

    const GridDensity flat = step_grid(canonicalize(0.4, 0.5, 9.0), 256);
    for (double c : flat.coeffs()) CHECK(std::abs(c - 1.0 / 256.0) <= 1e-12);
}

TEST_CASE("grid and density reject degenerate requests") {
    CHECK_THROWS_AS(step_density(SourceParams{0.1, 0.5, 1e-9}, 0.0), std::domain_error);
    CHECK_THROWS_AS(step_grid(canonicalize(0.1, 0.5, 0.04), 100), std::invalid_argument);
    CHECK_THROWS_AS(step_grid(canonicalize(0.1, 0.5, 0.04), 32), std::invalid_argument);
    CHECK_THROWS_AS(step_extrema(1e-6), std::domain_error);
}
