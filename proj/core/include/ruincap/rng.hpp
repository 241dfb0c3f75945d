#pragma once

#include <cstdint>
#include <random>

namespace ruincap {

// Independent random stream addressed by (seed, stream, index). The address
// is hashed into a single 64-bit seed for std::mt19937_64, whose output is
// fully specified by the standard, so streams are reproducible everywhere.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : engine_(mix(mix(mix(seed) ^ stream) ^ index)) {}

    // Uniform on [0, 1) with 53 random bits; 1 - uniform() is exact.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // splitmix64 finalizer
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ruincap
