#pragma once

#include <cmath>
#include <cstdint>

namespace fracpath {

// Counter-based generator built on the SplitMix64 finalizer.
//   key(seed, stream) = mix(mix(seed) ^ mix(stream + 0x632BE59BD9B4E019))
//   draw k            = mix(key + (k + 1) * 0x9E3779B97F4A7C15)
// Draw k of a stream depends only on (seed, stream, k), so streams can be split per
// coordinate, per seed or per task without coordination.
class CounterRng {
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
        return mix(mix(seed) ^ mix(stream + 0x632BE59BD9B4E019ULL));
    }

    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(stream_key(seed, stream)) {}

    std::uint64_t at(std::uint64_t k) const { return mix(key_ + (k + 1) * golden); }
    std::uint64_t next() { return at(counter_++); }
    std::uint64_t counter() const { return counter_; }
    std::uint64_t key() const { return key_; }

    // Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    // Box-Muller, one variate per pair of draws.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double exponential() { return -std::log(uniform()); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace fracpath
