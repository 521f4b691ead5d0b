#pragma once

#include <cstdint>

namespace wl {

/// Deterministic 64-bit xorshift* stream (Marsaglia xorshift with the
/// 2685821657736338717 multiplier). All seeded experiments use this
/// generator so runs replicate across platforms and implementations:
///     x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * M
/// The state must be nonzero, so seed 0 is remapped to a fixed constant.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 2685821657736338717ull;
    }

    /// Uniform in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [0, bound), bound >= 1; rejection sampling keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~0ull - ~0ull % bound;
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % bound;
    }

    bool next_bool() { return next() >> 63; }

private:
    std::uint64_t state_;
};

}  // namespace wl
