#pragma once
// Deterministic PRNG used for every random choice in the library.
//
// xoshiro256** 1.0 (Blackman/Vigna), seeded through splitmix64. All
// synthetic-graph numbers are generator-dependent; the generator is pinned
// here so that a (seed, parameters) pair reproduces bit-identical output.

#include <cmath>
#include <cstdint>

namespace altkit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 stream fills the xoshiro state; avoids all-zero state.
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            word = z ^ (z >> 31);
        }
    }

    // Derive an independent stream, e.g. per epoch or per restart.
    Rng fork(std::uint64_t salt) const {
        return Rng(state_[0] ^ (salt * 0x9e3779b97f4a7c15ull) ^ state_[3]);
    }

    std::uint64_t next_u64() {
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
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n) with rejection to kill modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double gaussian(double mean = 0.0, double stddev = 1.0) {
        // Box-Muller, one value per call (cached pair dropped for determinism
        // across call sites).
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // Standard Gumbel(0,1) draw: -log(-log U).
    double gumbel() {
        double u = next_double();
        while (u <= 0.0) u = next_double();
        return -std::log(-std::log(u));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace altkit
