#pragma once

#include <cmath>
#include <cstdint>

namespace influx {

/// SplitMix64 (Steele, Lea & Flood 2014). The whole state is one 64-bit
/// counter advanced by the golden-ratio increment; outputs are the counter
/// passed through a fixed 64-bit finalizer.
class SplitMix64 {
public:
    static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;

    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent stream `index` of `seed`: state = mix(mix(seed) + index).
    static constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return SplitMix64(mix(mix(seed) + index));
    }

    constexpr std::uint64_t next() noexcept {
        state_ += kIncrement;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Poisson(lambda) by Knuth's product-of-uniforms method. Large rates are
/// split into chunks of at most 30, whose Poisson counts add up.
inline std::uint64_t sample_poisson(double lambda, SplitMix64& rng) {
    constexpr double kChunk = 30.0;
    const double chunks = std::ceil(lambda / kChunk);
    const double rate = lambda / chunks;
    const double threshold = std::exp(-rate);
    std::uint64_t total = 0;
    for (double c = 0; c < chunks; c += 1.0) {
        double product = rng.uniform();
        while (product > threshold) {
            ++total;
            product *= rng.uniform();
        }
    }
    return total;
}

}  // namespace influx
