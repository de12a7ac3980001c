#ifndef HELIOS_RNG_HPP
#define HELIOS_RNG_HPP

#include <cstdint>

// Counter-based pseudo-random generator built on the SplitMix64 finalizer.
// Every draw is a pure function of (seed, stream, counter), so any consumer
// can derive its values independently of evaluation order. Streams separate
// logical uses (per-sensor noise, per-config sampling, mini-batch indices).

namespace helios {

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(mix(mix(seed + 0x9E3779B97F4A7C15ull) ^ mix(stream + 0xD1B54A32D192ED03ull))) {}

    // 64 uniform bits for the given counter.
    std::uint64_t bits(std::uint64_t counter) const { return mix(base_ + counter * 0x9E3779B97F4A7C15ull); }

    // Uniform in [0, 1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    // Standard normal pair via Box-Muller; consumes counters (2c, 2c+1).
    void normal_pair(std::uint64_t counter, double& n0, double& n1) const;

    // Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t counter, std::uint64_t n) const { return bits(counter) % n; }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27; z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t base_;
};

} // namespace helios

#endif
