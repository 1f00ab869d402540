#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace scanspectra {

// Counter-based deterministic generator keyed by (seed, stream). Independent
// streams let trials run in parallel without coordination while staying
// byte-reproducible across platforms (no std:: distributions anywhere).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(mix(seed + kGolden) ^ mix(stream + kStreamSalt))) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound); unbiased via rejection.
    std::uint64_t uniform_int(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::uniform_int: bound must be positive");
        const std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            const unsigned __int128 m = static_cast<unsigned __int128>(r) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    bool coin() { return (next_u64() >> 63) != 0; }

    // Number of trials up to and including the first success, success
    // probability 1/2; support {1, 2, ...}.
    long geometric_half() {
        long k = 1;
        while (!coin()) ++k;
        return k;
    }

    // Standard normal via Box-Muller (pair cached for determinism).
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;

    // SplitMix64 output mix.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Default seed used by the command-line tool when none is given.
inline constexpr std::uint64_t kDefaultSeed = 1729;

}  // namespace scanspectra
