#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace slrf {

/// Deterministic random stream (xoshiro256** state, splitmix64 seeding).
///
/// The standard library's distributions are implementation-defined, so every
/// consumer in this project draws through this class instead; results are then
/// identical across compilers and platforms for a given seed.
///
/// A stream remembers the seed it was built from. derive(stream, index)
/// produces an independent child stream keyed on that seed, so callers can
/// hand out substreams (per tree, per iteration, per fold) whose output does
/// not depend on how much the parent has already been consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t z = seed;
        for (auto& word : state_) {
            word = splitmix64(z);
        }
    }

    std::uint64_t seed() const { return seed_; }

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

    /// Unbiased integer in [0, bound); bound must be positive.
    std::uint32_t next_below(std::uint32_t bound) {
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                x = next_u64() >> 32;
                m = x * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes two uniforms per call.
    double next_normal() {
        const double u1 = 1.0 - next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Child stream keyed on (seed, stream, index), independent of this
    /// stream's current position.
    Rng derive(std::uint64_t stream, std::uint64_t index = 0) const {
        std::uint64_t h = seed_ ^ splitmix64_once(stream * 0xA24BAED4963EE407ULL + 0x9E3779B97F4A7C15ULL);
        h = splitmix64_once(h ^ splitmix64_once(index * 0x9FB21C651E98DF25ULL + 0xD1B54A32D192ED03ULL));
        return Rng(h);
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = next_below(static_cast<std::uint32_t>(i));
            std::swap(values[i - 1], values[j]);
        }
    }

    /// k distinct integers sampled uniformly from [0, n), in draw order.
    std::vector<int> pick_distinct(int n, int k) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            pool[static_cast<std::size_t>(i)] = i;
        }
        std::vector<int> picked;
        picked.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k && i < n; ++i) {
            const int j = i + static_cast<int>(next_below(static_cast<std::uint32_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            picked.push_back(pool[static_cast<std::size_t>(i)]);
        }
        return picked;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& state) {
        state += 0x9E3779B97F4A7C15ULL;
        return splitmix64_once(state);
    }

    static std::uint64_t splitmix64_once(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

} // namespace slrf
