#pragma once

#include <cstdint>
#include <cmath>

namespace beurlab {

/// Splittable counter-based generator. Bit-identical across platforms,
/// unlike the standard <random> distributions.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Derive an independent stream keyed by (this stream's seed, key).
    static SplitMix64 with_key(std::uint64_t seed, std::uint64_t key) {
        SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ull + key * 0xd1b54a32d192ed03ull));
        mix.next_u64();
        return mix;
    }

  private:
    std::uint64_t state_;
};

}  // namespace beurlab
