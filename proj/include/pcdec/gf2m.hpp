#pragma once

#include <cstdint>
#include <vector>

namespace pcdec {

/// GF(2^m) arithmetic via log/antilog tables built from a fixed primitive
/// polynomial per m. Immutable after construction.
class GaloisField {
public:
    explicit GaloisField(int m);

    int m() const { return m_; }
    uint32_t q() const { return q_; }          // field size 2^m
    uint32_t order() const { return order_; }  // multiplicative order 2^m - 1

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    uint32_t inv(uint32_t a) const { return exp_[order_ - log_[a]]; }

    uint32_t div(uint32_t a, uint32_t b) const {
        if (a == 0) return 0;
        return exp_[log_[a] + order_ - log_[b]];
    }

    uint32_t cube(uint32_t a) const {
        if (a == 0) return 0;
        return exp_[(3u * log_[a]) % order_];
    }

    uint32_t alpha_pow(uint32_t e) const { return exp_[e % order_]; }

    /// Discrete log base alpha; a must be nonzero.
    uint32_t log(uint32_t a) const { return log_[a]; }

    /// Solves y^2 + y = u. Returns false when u has trace 1 (no solution).
    bool solve_quadratic(uint32_t u, uint32_t& y) const {
        const uint16_t s = qsolve_[u];
        if (s == kNoRoot) return false;
        y = s;
        return true;
    }

    /// Fixed primitive polynomial for each supported m (3..10).
    static uint32_t primitive_poly(int m);

private:
    static constexpr uint16_t kNoRoot = 0xFFFF;

    int m_;
    uint32_t q_, order_;
    std::vector<uint16_t> exp_;     // 2 * order entries, avoids a mod in mul
    std::vector<uint16_t> log_;     // q entries, log_[0] unused
    std::vector<uint16_t> qsolve_;  // root table for y^2 + y = u
};

}  // namespace pcdec
