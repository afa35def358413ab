#include "pcdec/gf2m.hpp"

#include <stdexcept>

namespace pcdec {

uint32_t GaloisField::primitive_poly(int m) {
    switch (m) {
        case 3: return 0xB;     // x^3 + x + 1
        case 4: return 0x13;    // x^4 + x + 1
        case 5: return 0x25;    // x^5 + x^2 + 1
        case 6: return 0x43;    // x^6 + x + 1
        case 7: return 0x89;    // x^7 + x^3 + 1
        case 8: return 0x11D;   // x^8 + x^4 + x^3 + x^2 + 1
        case 9: return 0x211;   // x^9 + x^4 + 1
        case 10: return 0x409;  // x^10 + x^3 + 1
    }
    throw std::invalid_argument("GaloisField: unsupported extension degree m=" + std::to_string(m));
}

GaloisField::GaloisField(int m)
    : m_(m),
      q_(1u << m),
      order_(q_ - 1),
      exp_(2 * (q_ - 1)),
      log_(q_, 0),
      qsolve_(q_, kNoRoot) {
    const uint32_t poly = primitive_poly(m);  // validates m
    uint32_t x = 1;
    for (uint32_t i = 0; i < order_; ++i) {
        exp_[i] = static_cast<uint16_t>(x);
        log_[x] = static_cast<uint16_t>(i);
        x <<= 1;
        if (x & q_) x ^= poly;
    }
    if (x != 1) throw std::logic_error("GaloisField: generator element did not close its cycle");
    for (uint32_t i = 0; i < order_; ++i) exp_[order_ + i] = exp_[i];
    // y and y+1 solve the same y^2 + y = u; keep the smaller representative.
    for (uint32_t y = 0; y < q_; ++y) {
        const uint32_t u = mul(y, y) ^ y;
        if (qsolve_[u] == kNoRoot) qsolve_[u] = static_cast<uint16_t>(y);
    }
}

}  // namespace pcdec
