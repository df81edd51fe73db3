#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace chainscore {

// Deterministic xoshiro256++ stream. The standard <random> distributions are
// implementation-defined, so every draw the pipeline makes goes through this
// class; artifacts stay byte-identical across compilers and across
// serial/parallel runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_hint_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound). Lemire's method with rejection.
    std::uint64_t uniform(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0, 1), 53-bit resolution.
    double real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (polar-free form keeps the draw count
    // fixed at two per call, which matters for reproducibility).
    double normal() {
        const double u1 = real();
        const double u2 = real();
        const double r = std::sqrt(-2.0 * std::log(u1 + 1e-300));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

    // Named substream: independent generator derived from this seed and a
    // label, e.g. rng.fork("xg_split").
    Rng fork(std::string_view name) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        std::uint64_t mix = seed_hint_ ^ h;
        Rng child(splitmix64(mix));
        child.seed_hint_ = mix;
        return child;
    }

    static std::uint64_t derive(std::uint64_t seed, std::string_view name) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4] = {};
    std::uint64_t seed_hint_ = 0;
};

}  // namespace chainscore
