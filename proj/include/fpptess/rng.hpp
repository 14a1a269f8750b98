#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace fpptess {

// splitmix64 finalizer; used both as a seed scrambler and to derive
// independent substream seeds from (seed, index) pairs.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for replicate `index` of a run keyed by `seed`.  Nested hashing (not
// an XOR of two hashes, which collides to 0 whenever seed == index + 1).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Deterministic random stream with explicit sampling algorithms so that a
// given seed reproduces byte-identical draws. Replicate-level parallelism
// derives one substream per replicate index.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed)
        : engine_(splitmix64(seed)) {}

    static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
        return RandomStream(substream_seed(seed, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0,1) with 53 random bits
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // inversion; uses 1-U so the argument of log is in (0,1]
    double exponential(double rate) {
        return -std::log1p(-uniform01()) / rate;
    }

    // Box-Muller, cosine branch only (deterministic draw count: 2 per call)
    double normal() {
        double u1 = 1.0 - uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // exponential-arrival counting; exact for any mean, O(mean) draws
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        double acc = 0.0;
        long n = -1;
        while (acc <= mean) {
            acc += exponential(1.0);
            ++n;
        }
        return n;
    }

    // index into weights proportional to weight (weights need not sum to 1)
    std::size_t categorical(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fpptess
