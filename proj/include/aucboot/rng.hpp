#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aucboot {

/// Advances a splitmix64 state and returns the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic seed derivation: child seed = mix(parent seed, stream id).
/// Every parallel unit of work (trial, replicate pool, supplement pool, ...)
/// gets its own stream id so results do not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1));
    splitmix64(s);
    return splitmix64(s);
}

/// Seeded random stream with reproducible child-stream splitting.
///
/// The engine is std::mt19937_64 (bit-reproducible across platforms); all
/// variate transforms are implemented here rather than with std::*_distribution
/// so that sequences are identical for a given seed on any standard library.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : root_(seed), eng_(seed) {}

    /// Child stream derived from this stream's seed only (not its position),
    /// so splitting commutes with any interleaving of draws.
    RngStream child(std::uint64_t stream_id) const {
        return RngStream(derive_seed(root_, stream_id));
    }

    std::uint64_t seed() const { return root_; }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [0, n). Rejection sampling keeps it exactly uniform.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x = eng_();
        while (x < threshold) x = eng_();
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the second variate is cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t root_;
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace aucboot
