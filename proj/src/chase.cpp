#include "pcdec/chase.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pcdec {

std::vector<int> least_reliable_positions(std::span<const double> r, int p) {
    const int n = static_cast<int>(r.size());
    if (p < 1 || p > n) throw std::invalid_argument("least_reliable_positions: p out of range");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const auto less = [&](int a, int b) {
        const double ma = std::fabs(r[a]), mb = std::fabs(r[b]);
        return ma != mb ? ma < mb : a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + p, idx.end(), less);
    idx.resize(p);
    return idx;
}

BitVec apply_flip_mask(const BitVec& w, std::span<const int> lrp, uint32_t mask) {
    BitVec out = w;
    for (size_t b = 0; b < lrp.size(); ++b)
        if ((mask >> b) & 1u) out.flip(lrp[b]);
    return out;
}

CandidateSet chase_decode(std::span<const double> r, int p, const ComponentCode& code) {
    const int n = code.n(), ni = code.n_inner();
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("chase_decode: vector length != n");
    if (p < 1 || p > n) throw std::invalid_argument("chase_decode: p out of range");

    CandidateSet cs;
    cs.n = n;
    cs.p = p;
    cs.lrp = least_reliable_positions(r, p);

    BitVec w(n);
    for (int j = 0; j < n; ++j)
        if (r[j] < 0.0) w.set(j, true);

    uint32_t s1 = 0, s3 = 0;
    code.syndromes(w, s1, s3);

    // Flipping position j adds alpha^(n_inner-1-j) to S1 (its cube to S3);
    // the extension bit contributes nothing.
    std::vector<uint32_t> d1(p), d3(p);
    for (int b = 0; b < p; ++b) {
        const int j = cs.lrp[b];
        d1[b] = j < ni ? code.pos_pow1(j) : 0;
        d3[b] = j < ni ? code.pos_pow3(j) : 0;
    }

    BitVec t = w;
    const uint64_t npat = uint64_t{1} << p;
    double best = 0.0;
    int epos[2];
    for (uint64_t mask = 0;;) {
        const int cnt = code.locate_errors(s1, s3, epos);
        if (cnt >= 0) {
            BitVec c = t;
            for (int i = 0; i < cnt; ++i) c.flip(epos[i]);
            const bool inner_odd = ((c.popcount() & 1) != 0) != c.get(n - 1);
            c.set(n - 1, inner_odd);

            bool seen = false;
            for (const BitVec& prev : cs.candidates)
                if (prev == c) {
                    seen = true;
                    break;
                }
            if (!seen) {
                double metric = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double diff = r[j] - (c.get(j) ? -1.0 : 1.0);
                    metric += diff * diff;
                }
                cs.candidates.push_back(c);
                cs.euclid.push_back(metric);
                if (cs.decision_index < 0 || metric < best) {
                    best = metric;
                    cs.decision_index = static_cast<int>(cs.candidates.size()) - 1;
                }
            }
        }
        if (++mask == npat) break;
        // Binary counting: every mask bit that toggled flips its position and
        // updates both syndromes.
        uint64_t delta = mask ^ (mask - 1);
        while (delta) {
            const int b = std::countr_zero(delta);
            delta &= delta - 1;
            t.flip(cs.lrp[b]);
            s1 ^= d1[b];
            s3 ^= d3[b];
        }
    }

    cs.order.resize(cs.candidates.size());
    std::iota(cs.order.begin(), cs.order.end(), 0);
    std::sort(cs.order.begin(), cs.order.end(), [&](int a, int b) {
        return cs.euclid[a] != cs.euclid[b] ? cs.euclid[a] < cs.euclid[b] : a < b;
    });
    return cs;
}

std::optional<int> find_competitor(const CandidateSet& cs, int j) {
    if (cs.decision_index < 0) throw std::logic_error("find_competitor: candidate set has no decision");
    if (j < 0 || j >= cs.n) throw std::out_of_range("find_competitor: bit index out of range");
    const bool dj = cs.decision().get(j);
    for (int idx : cs.order) {
        if (idx == cs.decision_index) continue;
        if (cs.candidates[idx].get(j) != dj) return idx;
    }
    return std::nullopt;
}

double destructive_distance(std::span<const double> r, const BitVec& c) {
    if (static_cast<int>(r.size()) != c.size()) throw std::invalid_argument("destructive_distance: length mismatch");
    double acc = 0.0;
    for (int j = 0; j < c.size(); ++j) {
        const bool bit = c.get(j);
        if (bit != (r[j] < 0.0)) {
            const double diff = r[j] - (bit ? -1.0 : 1.0);
            acc += diff * diff;
        }
    }
    return acc;
}

}  // namespace pcdec
