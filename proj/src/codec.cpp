#include "pcdec/codec.hpp"

#include <bit>
#include <stdexcept>

namespace pcdec {
namespace {

// Minimal polynomial of alpha^s over GF(2): product of (x + alpha^e) over the
// cyclotomic coset of s. Coefficients land in {0,1} by construction.
std::vector<uint8_t> minimal_poly(const GaloisField& gf, uint32_t s) {
    std::vector<uint32_t> coset;
    uint32_t e = s;
    do {
        coset.push_back(e);
        e = (2 * e) % gf.order();
    } while (e != s);

    std::vector<uint32_t> poly{1};
    for (uint32_t ce : coset) {
        const uint32_t root = gf.alpha_pow(ce);
        std::vector<uint32_t> next(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] ^= poly[i];
            next[i] ^= gf.mul(poly[i], root);
        }
        poly = std::move(next);
    }

    std::vector<uint8_t> out(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] > 1) throw std::logic_error("minimal_poly: coefficient outside GF(2)");
        out[i] = static_cast<uint8_t>(poly[i]);
    }
    return out;
}

std::vector<uint8_t> poly_mul_gf2(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    std::vector<uint8_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] ^= b[j];
    }
    return c;
}

}  // namespace

ComponentCode::ComponentCode(int m, int d)
    : m_(m), n_(1 << m), n_inner_((1 << m) - 1), d_(d), t_(2), gf_(m) {
    if (d != 6) throw std::invalid_argument("ComponentCode: only design distance 6 (t = 2) is supported");
    if (n_ > BitVec::kMaxBits) throw std::invalid_argument("ComponentCode: length exceeds BitVec capacity");

    gen_ = poly_mul_gf2(minimal_poly(gf_, 1), minimal_poly(gf_, 3));
    k_ = n_inner_ - (static_cast<int>(gen_.size()) - 1);

    pos1_.assign(n_, 0);
    pos3_.assign(n_, 0);
    for (int j = 0; j < n_inner_; ++j) {
        const uint32_t e = static_cast<uint32_t>(n_inner_ - 1 - j);
        pos1_[j] = static_cast<uint16_t>(gf_.alpha_pow(e));
        pos3_[j] = static_cast<uint16_t>(gf_.alpha_pow((3 * e) % gf_.order()));
    }
    // pos1_[n_-1] = pos3_[n_-1] = 0: the extension bit never touches the inner syndromes.

    name_ = "ebch_" + std::to_string(n_) + "_" + std::to_string(k_);
}

ComponentCode ComponentCode::make(int m, int d) { return ComponentCode(m, d); }

ComponentCode ComponentCode::by_name(std::string_view name) {
    if (name == "ebch_256_239") return make(8, 6);
    if (name == "ebch_32_21") return make(5, 6);
    throw std::invalid_argument("ComponentCode: unknown code name \"" + std::string(name) + "\"");
}

void ComponentCode::syndromes(const BitVec& word, uint32_t& s1, uint32_t& s3) const {
    uint32_t a = 0, b = 0;
    const auto& w = word.words();
    for (int wi = 0; wi * 64 < n_inner_; ++wi) {
        uint64_t x = w[wi];
        const int base = wi * 64;
        if (base + 64 > n_inner_) x &= (uint64_t{1} << (n_inner_ - base)) - 1;
        while (x) {
            const int j = base + std::countr_zero(x);
            x &= x - 1;
            a ^= pos1_[j];
            b ^= pos3_[j];
        }
    }
    s1 = a;
    s3 = b;
}

int ComponentCode::locate_errors(uint32_t s1, uint32_t s3, int* pos) const {
    if (s1 == 0) return s3 == 0 ? 0 : -1;
    if (s3 == gf_.cube(s1)) {
        pos[0] = n_inner_ - 1 - static_cast<int>(gf_.log(s1));
        return 1;
    }
    // Two errors with locators X1, X2: X = s1*y where y^2 + y = s3/s1^3 + 1.
    const uint32_t u = gf_.div(s3, gf_.cube(s1)) ^ 1u;
    uint32_t y = 0;
    if (!gf_.solve_quadratic(u, y)) return -1;
    const uint32_t x1 = gf_.mul(s1, y);
    const uint32_t x2 = x1 ^ s1;
    if (x1 == 0 || x2 == 0) return -1;  // unreachable for u != 0; kept as a guard
    pos[0] = n_inner_ - 1 - static_cast<int>(gf_.log(x1));
    pos[1] = n_inner_ - 1 - static_cast<int>(gf_.log(x2));
    return 2;
}

BitVec bch_encode(const BitVec& message, const ComponentCode& code) {
    const int n = code.n(), ni = code.n_inner(), k = code.k(), r = ni - k;
    if (message.size() != k) throw std::invalid_argument("bch_encode: message length != k");

    // Long division of x^r * m(x) by g(x); index = coefficient degree.
    std::vector<uint8_t> a(ni, 0);
    for (int j = 0; j < k; ++j) a[ni - 1 - j] = message.get(j) ? 1 : 0;
    const auto& g = code.generator();
    for (int deg = ni - 1; deg >= r; --deg) {
        if (!a[deg]) continue;
        for (int i = 0; i <= r; ++i) a[deg - r + i] ^= g[i];
    }

    BitVec cw(n);
    for (int j = 0; j < k; ++j) cw.set(j, message.get(j));
    for (int j = k; j < ni; ++j) cw.set(j, a[ni - 1 - j] != 0);
    if (cw.popcount() & 1) cw.set(n - 1, true);
    return cw;
}

std::optional<BitVec> bdd_decode(const BitVec& word, const ComponentCode& code) {
    const int n = code.n();
    if (word.size() != n) throw std::invalid_argument("bdd_decode: word length != n");
    uint32_t s1 = 0, s3 = 0;
    code.syndromes(word, s1, s3);
    int pos[2];
    const int cnt = code.locate_errors(s1, s3, pos);
    if (cnt < 0) return std::nullopt;
    BitVec out = word;
    for (int i = 0; i < cnt; ++i) out.flip(pos[i]);
    const bool inner_odd = ((out.popcount() & 1) != 0) != out.get(n - 1);
    out.set(n - 1, inner_odd);
    return out;
}

BitVec pack_row(std::span<const uint8_t> row) { return BitVec::from_bytes(row); }

void unpack_row(const BitVec& v, std::span<uint8_t> row) { v.to_bytes(row); }

BitMatrix pc_encode(const BitMatrix& message, const ComponentCode& code) {
    const int k = code.k(), n = code.n();
    if (message.rows() != k || message.cols() != k) throw std::invalid_argument("pc_encode: message is not k x k");

    BitMatrix out(n, n, 0);
    BitVec msg(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) msg.set(j, message.at(i, j) != 0);
        unpack_row(bch_encode(msg, code), out.row(i));
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < k; ++i) msg.set(i, out.at(i, j) != 0);
        const BitVec cw = bch_encode(msg, code);
        for (int i = 0; i < n; ++i) out.at(i, j) = cw.get(i) ? 1 : 0;
    }
    return out;
}

BitMatrix ibdd_decode(const BitMatrix& bits, int iters, const ComponentCode& code) {
    const int n = code.n();
    if (bits.rows() != n || bits.cols() != n) throw std::invalid_argument("ibdd_decode: matrix is not n x n");
    BitMatrix cur = bits;
    for (int it = 0; it < iters; ++it) {
        bool changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < n; ++i) {
                const BitVec w = pack_row(cur.row(i));
                if (auto dec = bdd_decode(w, code); dec && *dec != w) {
                    unpack_row(*dec, cur.row(i));
                    changed = true;
                }
            }
            cur.transpose_inplace();
        }
        if (!changed) break;
    }
    return cur;
}

bool pc_is_codeword(const BitMatrix& bits, const ComponentCode& code) {
    const int n = code.n();
    if (bits.rows() != n || bits.cols() != n) return false;
    const auto component_ok = [&](const BitVec& w) {
        uint32_t s1 = 0, s3 = 0;
        code.syndromes(w, s1, s3);
        return s1 == 0 && s3 == 0 && (w.popcount() & 1) == 0;
    };
    for (int i = 0; i < n; ++i)
        if (!component_ok(pack_row(bits.row(i)))) return false;
    BitMatrix t = bits;
    t.transpose_inplace();
    for (int i = 0; i < n; ++i)
        if (!component_ok(pack_row(t.row(i)))) return false;
    return true;
}

}  // namespace pcdec
