#ifndef STRETCHPACK_RNG_HPP
#define STRETCHPACK_RNG_HPP

#include <cstdint>

namespace stretchpack {

// SplitMix64: 64-bit-state deterministic generator. Corpora and fuzz seeds
// reproduce across implementations from this exact recurrence; bounded draws
// use plain modulo (documented in the README).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-ish draw in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

}  // namespace stretchpack

#endif
