#pragma once

#include <cstdint>
#include <span>

namespace dronesec {

/// Deterministic 64-bit generator (SplitMix64). The algorithm is fixed so that
/// transcripts and nonces reproduce bit-exactly across platforms and language
/// bindings; see docs/determinism.md for the exact stepping and byte order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) by rejection sampling. bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Fills dst with successive next() words written big-endian; a trailing
    /// partial word takes the most significant bytes.
    void fill(std::span<std::uint8_t> dst) {
        std::size_t i = 0;
        while (i < dst.size()) {
            const std::uint64_t w = next();
            for (int b = 7; b >= 0 && i < dst.size(); --b) {
                dst[i++] = static_cast<std::uint8_t>(w >> (8 * b));
            }
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace dronesec
