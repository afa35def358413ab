#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pcdec/bitvec.hpp"
#include "pcdec/codec.hpp"

namespace pcdec {

/// Output of Chase-II component decoding: the deduplicated candidate list
/// with squared Euclidean metrics and the minimum-metric decision.
struct CandidateSet {
    int n = 0;
    int p = 0;
    std::vector<int> lrp;              // p least reliable positions, ascending |r|, ties to lower index
    std::vector<BitVec> candidates;    // unique codewords in first-seen order
    std::vector<double> euclid;        // ||r - mu(c_i)||^2
    std::vector<double> destructive;   // filled on demand by the confidence features
    std::vector<int> order;            // candidate indices sorted by (euclid, index)
    int decision_index = -1;

    bool empty() const { return candidates.empty(); }
    size_t size() const { return candidates.size(); }
    const BitVec& decision() const { return candidates[decision_index]; }
    double decision_metric() const { return euclid[decision_index]; }
};

/// Indices of the p smallest |r_i|, ascending reliability, stable on ties.
std::vector<int> least_reliable_positions(std::span<const double> r, int p);

/// w xor f where f flips lrp[b] for every set bit b of mask. Bit b of the
/// mask is the b-th least reliable position, matching binary counting over
/// the pattern index.
BitVec apply_flip_mask(const BitVec& w, std::span<const int> lrp, uint32_t mask);

/// Chase-II decoding of one soft vector: hard decision, 2^p test patterns
/// over the least reliable positions, BDD per pattern, distinct successes
/// collected with metrics. An empty candidate set is a valid outcome.
CandidateSet chase_decode(std::span<const double> r, int p, const ComponentCode& code);

/// Minimum-metric candidate disagreeing with the decision at bit j.
std::optional<int> find_competitor(const CandidateSet& cs, int j);

/// Squared Euclidean distance restricted to positions where c disagrees with
/// the hard decision of r.
double destructive_distance(std::span<const double> r, const BitVec& c);

}  // namespace pcdec
