#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pcdec {

/// SplitMix64. Cheap, counter-friendly, identical output on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : s_(seed) {}

    uint64_t next() {
        uint64_t z = (s_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never returns 0 (safe as a log argument).
    double next_unit_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform on [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Unbiased integer in [0, bound) via rejection.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = -bound % bound;
        for (;;) {
            const uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    uint64_t s_;
};

inline uint64_t mix_u64(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Disjoint stream identifiers. A stream is fully determined by
/// (seed, stream id, index), so frames can be generated concurrently
/// and still reproduce bit-exactly.
enum class Stream : uint64_t {
    noise = 0x6e6f697365ull,
    message = 0x6d657373ull,
    shuffle = 0x73687566ull,
    balance = 0x62616c61ull,
    tuner = 0x74756e65ull,
};

inline SplitMix64 substream(uint64_t seed, Stream stream, uint64_t index) {
    return SplitMix64(mix_u64(mix_u64(seed, static_cast<uint64_t>(stream)), index));
}

/// Box-Muller over SplitMix64; emits a deterministic standard normal stream.
class GaussianSource {
public:
    explicit GaussianSource(SplitMix64 rng) : rng_(rng) {}

    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        const double u1 = rng_.next_unit_pos();
        const double u2 = rng_.next_unit();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = rad * std::sin(ang);
        have_ = true;
        return rad * std::cos(ang);
    }

private:
    SplitMix64 rng_;
    bool have_ = false;
    double spare_ = 0.0;
};

/// Deterministic Fisher-Yates shuffle (std::shuffle is not portable across
/// standard libraries).
template <typename T>
void shuffle_inplace(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = rng.next_below(i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace pcdec
