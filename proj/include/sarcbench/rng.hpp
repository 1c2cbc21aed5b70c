#pragma once

// Deterministic random number generation with a fixed cross-platform
// output stream. All sampling in the toolkit goes through these types so
// that a (seed, input) pair fully determines every result. Generators:
// splitmix64 (Steele et al.) for seeding and per-tree stream derivation,
// xoshiro256** (Blackman & Vigna) as the workhorse.

#include <cstdint>
#include <span>
#include <vector>

namespace sarcbench {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256ss {
public:
    // State is initialized from four consecutive splitmix64 outputs, the
    // seeding recipe recommended by the xoshiro authors.
    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : state_) s = sm.next();
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

    // Unbiased integer in [0, n) via Lemire's multiply-shift with rejection.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Xoshiro256ss& rng) {
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        const std::size_t j = i + rng.bounded(items.size() - i);
        std::swap(items[i], items[j]);
    }
}

// First k entries of a Fisher-Yates pass over [0, n): a uniform sample
// without replacement, in draw order.
inline std::vector<std::uint32_t> sample_without_replacement(std::size_t n,
                                                             std::size_t k,
                                                             Xoshiro256ss& rng) {
    std::vector<std::uint32_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        const std::size_t j = i + rng.bounded(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace sarcbench
