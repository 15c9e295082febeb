#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace swarmlab {

// SplitMix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of the independent stream used for one replication. The seed is mixed
// before the xor; otherwise seeds below the replication count would only
// permute the same set of streams.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ index);
}

// xoshiro256** with SplitMix64 seeding. Output is fully specified, so a seed
// reproduces the same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            word = mix64(x);
        }
    }

    std::uint64_t next() noexcept {
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

    // Uniform on (0, 1]; never returns 0, so -log(u) is finite.
    double uniform_open0() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Inverse-CDF exponential draw. rate must be positive.
    double exponential(double rate) noexcept { return -std::log(uniform_open0()) / rate; }

    // Uniform index in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return static_cast<std::uint64_t>(u * static_cast<double>(n));
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

}  // namespace swarmlab
