#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace expool {

// Deterministic randomness source.
//
// A root source is built from a 64-bit seed; independent sub-streams are
// obtained by forking with a string label.  Forking with the same
// (seed, label) always yields an identical stream; distinct labels give
// streams that are independent for practical purposes.
//
// All draws go through our own helpers on top of the raw engine output so
// that traces are bit-reproducible across standard-library implementations
// (std::uniform_real_distribution makes no such promise).
class RandomnessSource {
public:
    explicit RandomnessSource(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    RandomnessSource(std::uint64_t seed, std::string_view label)
        : RandomnessSource(label_seed(seed, label)) {}

    // Child source with an independent stream derived from (our seed, label).
    RandomnessSource fork(std::string_view label) const {
        return RandomnessSource(seed_, label);
    }

    std::uint64_t seed() const { return seed_; }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).  n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Multiply-shift rejection-free mapping is fine here: n is tiny
        // compared to 2^64 and a bias of n/2^64 is far below anything the
        // experiments can resolve, while staying fully deterministic.
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t raw() { return engine_(); }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer; decorrelates consecutive seeds.
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t label_seed(std::uint64_t seed, std::string_view label) {
        // FNV-1a over the label folded into the seed, then remixed.
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : label) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return mix(seed ^ mix(h));
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Samples an index from non-negative weights using one uniform draw.
// The heaviest index (ties: lowest index) is visited first, so a quantile-0
// draw deterministically returns the heaviest / lowest-id choice.
std::size_t sample_index(const std::vector<double>& weights, double u);

}  // namespace expool
