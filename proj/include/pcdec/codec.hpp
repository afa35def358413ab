#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcdec/bitvec.hpp"
#include "pcdec/gf2m.hpp"
#include "pcdec/mat.hpp"

namespace pcdec {

/// Extended BCH component code: a [2^m - 1, k] double-error-correcting BCH
/// code plus one overall even-parity bit. Immutable after construction and
/// safe to share across threads.
class ComponentCode {
public:
    /// "ebch_256_239" or "ebch_32_21".
    static ComponentCode by_name(std::string_view name);

    /// Builds the code for GF(2^m) with design distance d. Only d = 6
    /// (t = 2 via the inner BCH code) is supported.
    static ComponentCode make(int m, int d);

    int m() const { return m_; }
    int n() const { return n_; }              // extended length 2^m
    int n_inner() const { return n_inner_; }  // inner BCH length 2^m - 1
    int k() const { return k_; }
    int d() const { return d_; }
    int t() const { return t_; }
    const GaloisField& gf() const { return gf_; }
    const std::vector<uint8_t>& generator() const { return gen_; }
    const std::string& name() const { return name_; }

    /// alpha^(n_inner-1-j) and its cube, indexed by codeword position j.
    /// Shared by the syndrome former and the Chase flip updates.
    uint32_t pos_pow1(int j) const { return pos1_[j]; }
    uint32_t pos_pow3(int j) const { return pos3_[j]; }

    /// Syndromes (S1, S3) of the inner part of a word.
    void syndromes(const BitVec& word, uint32_t& s1, uint32_t& s3) const;

    /// Given syndromes of the inner part, runs the t=2 bounded-distance step.
    /// On success fills up to two inner error positions and returns their
    /// count; returns -1 on decoding failure.
    int locate_errors(uint32_t s1, uint32_t s3, int* pos) const;

private:
    ComponentCode(int m, int d);

    int m_, n_, n_inner_, k_, d_, t_;
    GaloisField gf_;
    std::vector<uint8_t> gen_;  // g(x) coefficients, gen_[i] = coeff of x^i
    std::vector<uint16_t> pos1_, pos3_;
    std::string name_;
};

/// Systematic encoder. Layout: message in positions [0, k), inner parity in
/// [k, n-1), overall even parity at position n-1.
BitVec bch_encode(const BitVec& message, const ComponentCode& code);

/// Bounded-distance decoding of the inner 2^m - 1 bits (radius t = 2), with
/// the extension bit recomputed for even overall parity. The extension bit is
/// never corrected algebraically. Failure is a valid outcome, not an error.
std::optional<BitVec> bdd_decode(const BitVec& word, const ComponentCode& code);

/// Product-code encoder: rows then columns of a (k x k) message.
BitMatrix pc_encode(const BitMatrix& message, const ComponentCode& code);

/// Iterative hard-decision decoding: each iteration replaces every row, then
/// every column, by its BDD output when BDD succeeds.
BitMatrix ibdd_decode(const BitMatrix& bits, int iters, const ComponentCode& code);

/// True when every row and every column is a component codeword.
bool pc_is_codeword(const BitMatrix& bits, const ComponentCode& code);

BitVec pack_row(std::span<const uint8_t> row);
void unpack_row(const BitVec& v, std::span<uint8_t> row);

}  // namespace pcdec
