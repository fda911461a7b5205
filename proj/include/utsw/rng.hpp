#pragma once

#include <cstdint>

namespace utsw {

// SplitMix64 (Steele, Lea, Flood). The generator is fixed by these constants,
// so a given seed produces the same stream on every platform. Sub-streams for
// experiment cells are derived with derive_seed below.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound), bound > 0 (Lemire's multiply-reject).
    std::uint64_t bounded(std::uint64_t bound) {
        unsigned __int128 m = (unsigned __int128)next() * bound;
        auto low = (std::uint64_t)m;
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = (unsigned __int128)next() * bound;
                low = (std::uint64_t)m;
            }
        }
        return (std::uint64_t)(m >> 64);
    }

    // Uniform double in [0,1) using the top 53 bits.
    double unit() { return (double)(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Stable per-cell seed: mixes (base, a, b) through two SplitMix64 steps.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    SplitMix64 s(base ^ (a * 0xD1B54A32D192ED03ull) ^ (b * 0x8CB92BA72F3D8DD7ull));
    s.next();
    return s.next();
}

} // namespace utsw
