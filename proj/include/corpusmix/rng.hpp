#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace corpusmix {

// Every random decision in the pipeline (stratum choice, shuffle order,
// epoch restarts, bucket selection, bootstrap resampling) is drawn from an
// Rng whose seed is derived from one master seed with derive_seed(). Results
// are therefore reproducible from the master seed alone and do not depend on
// thread scheduling.
//
// Generator: xoshiro256**, state seeded from SplitMix64. Bounded draws use
// rejection so they are unbiased and platform independent.

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h + kGolden + v);
}

}  // namespace detail

// Derives an independent stream seed from a master seed, a purpose tag, and
// up to two numeric qualifiers (e.g. epoch index, replicate index).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = detail::mix64(master + detail::kGolden);
    for (char c : tag)
        h = detail::hash_combine(h, static_cast<unsigned char>(c));
    h = detail::hash_combine(h, a);
    return detail::hash_combine(h, b);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += detail::kGolden;
            word = detail::mix64(s);
        }
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

    // Unbiased integer in [0, n). n must be nonzero.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % n;
        }
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace corpusmix
