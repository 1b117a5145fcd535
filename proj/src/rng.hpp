#pragma once

#include <cmath>
#include <cstdint>

namespace nbldpc {

// xoshiro256** seeded through splitmix64. Self-contained so that draws are
// bit-identical across platforms and standard-library versions; simulation
// reproducibility depends on it.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
        spare_valid_ = false;
    }

    // Independent stream for (master, a, b), e.g. (seed, snr point, trial).
    static Rng stream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = master;
        std::uint64_t s = splitmix64(x);
        x = s ^ (a + 0x9e3779b97f4a7c15ULL);
        s = splitmix64(x);
        x = s ^ (b + 0xbf58476d1ce4e5b9ULL);
        return Rng(splitmix64(x));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Standard normal, Box-Muller with cached spare.
    double gaussian() {
        if (spare_valid_) {
            spare_valid_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        spare_valid_ = true;
        return r * std::cos(theta);
    }

    // Rayleigh amplitude with E[h^2] = 1.
    double rayleigh_unit() {
        const double u = 1.0 - uniform(); // (0, 1]
        return std::sqrt(-std::log(u));
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool spare_valid_ = false;
};

} // namespace nbldpc
