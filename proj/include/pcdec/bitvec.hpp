#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>

namespace pcdec {

/// Fixed-capacity bit vector used for component codewords (n <= 256).
/// Bits at indices >= size() are kept at zero so that word-level
/// comparisons and popcounts are valid.
class BitVec {
public:
    static constexpr int kMaxBits = 256;
    static constexpr int kWords = kMaxBits / 64;

    BitVec() = default;
    explicit BitVec(int n) : n_(n) {}

    int size() const { return n_; }

    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i, bool v) {
        const uint64_t m = uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    void clear() { w_ = {}; }

    int popcount() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    /// Hamming distance over the full vector.
    int hamming(const BitVec& o) const {
        int c = 0;
        for (int i = 0; i < kWords; ++i) c += std::popcount(w_[i] ^ o.w_[i]);
        return c;
    }

    /// Hamming distance restricted to positions [0, limit).
    int hamming_prefix(const BitVec& o, int limit) const {
        int c = 0;
        for (int i = 0; i < kWords; ++i) {
            uint64_t x = w_[i] ^ o.w_[i];
            const int base = i * 64;
            if (base >= limit) break;
            if (base + 64 > limit) x &= (uint64_t{1} << (limit - base)) - 1;
            c += std::popcount(x);
        }
        return c;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    const std::array<uint64_t, kWords>& words() const { return w_; }
    std::array<uint64_t, kWords>& words() { return w_; }

    static BitVec from_bytes(std::span<const uint8_t> bits) {
        BitVec v(static_cast<int>(bits.size()));
        for (int i = 0; i < v.n_; ++i)
            if (bits[i]) v.flip(i);
        return v;
    }

    void to_bytes(std::span<uint8_t> out) const {
        for (int i = 0; i < n_; ++i) out[i] = get(i) ? 1 : 0;
    }

private:
    int n_ = 0;
    std::array<uint64_t, kWords> w_{};
};

}  // namespace pcdec
