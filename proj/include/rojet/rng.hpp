#pragma once

#include <array>
#include <cstdint>

namespace rojet {

// xoshiro256++ (Blackman & Vigna, https://prng.di.unimi.it/), state seeded
// through SplitMix64 so any 64-bit seed is safe. Fixed algorithm so that
// simulated streams are bit-reproducible across platforms and languages.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed = 1) {
        std::uint64_t x = seed;
        for (auto& v : s_) v = splitmix64(x);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // 53-bit uniform in [0, 1).
    double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // (k + 1/2) / 2^53: uniform on (0, 1), never exactly 0 or 1, so the
    // inverse-CDF transform stays finite.
    double uniform01_open() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

// Inverse of the standard normal CDF (Wichura's AS241 PPND16, accurate to
// ~1e-16 over (0,1)). Used instead of rejection sampling so the Gaussian
// variate sequence is a deterministic function of the uniform sequence.
double inverse_normal_cdf(double p);

}  // namespace rojet
