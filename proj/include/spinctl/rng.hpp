#pragma once

#include <cstdint>

// Seedable, platform-independent random streams. The generator is
// xoshiro256++ (Blackman & Vigna, public domain), state-initialized with
// SplitMix64; substream(seed, index) derives statistically independent
// streams for parallel restarts / Monte-Carlo samples, so results do not
// depend on thread count or evaluation order.

namespace spinctl {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 sm(seed);
        const std::uint64_t base = sm.next();
        return Xoshiro256pp(base ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next() {
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

    // uniform in [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform in [-halfwidth, +halfwidth)
    double uniform_symmetric(double halfwidth) {
        return (2.0 * uniform01() - 1.0) * halfwidth;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace spinctl
