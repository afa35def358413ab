#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pcdec/channel.hpp"
#include "pcdec/chase.hpp"
#include "pcdec/codec.hpp"
#include "pcdec/rng.hpp"

using namespace pcdec;

namespace {

BitVec random_codeword(const ComponentCode& code, SplitMix64& rng) {
    BitVec m(code.k());
    for (int i = 0; i < code.k(); ++i) m.set(i, rng.next_below(2) != 0);
    return bch_encode(m, code);
}

std::vector<double> noisy_vector(const BitVec& c, double sigma, uint64_t seed) {
    GaussianSource g{SplitMix64(seed)};
    std::vector<double> r(c.size());
    for (int j = 0; j < c.size(); ++j) r[j] = (c.get(j) ? -1.0 : 1.0) + sigma * g.next();
    return r;
}

double euclid_metric(std::span<const double> r, const BitVec& c) {
    double acc = 0.0;
    for (int j = 0; j < c.size(); ++j) {
        const double diff = r[j] - (c.get(j) ? -1.0 : 1.0);
        acc += diff * diff;
    }
    return acc;
}

}  // namespace

TEST_CASE("least reliable positions sort by magnitude with index tie-break") {
    const std::vector<double> r = {0.1, -0.2, 0.9, 1.1};
    CHECK(least_reliable_positions(r, 2) == std::vector<int>{0, 1});
    CHECK(least_reliable_positions(r, 4) == std::vector<int>{0, 1, 2, 3});
    // exact-magnitude ties resolve to the lower index, stably
    const std::vector<double> tied = {0.5, -0.5, 0.2, 0.5};
    CHECK(least_reliable_positions(tied, 3) == std::vector<int>{2, 0, 1});
    CHECK(least_reliable_positions(tied, 4) == std::vector<int>{2, 0, 1, 3});
    CHECK_THROWS_AS(least_reliable_positions(r, 0), std::invalid_argument);
    CHECK_THROWS_AS(least_reliable_positions(r, 5), std::invalid_argument);
}

TEST_CASE("flip masks enumerate test patterns by binary counting") {
    const std::vector<double> r = {0.1, -0.2, 0.9, 1.1};
    const auto lrp = least_reliable_positions(r, 2);
    const auto wbits = hard_decision(std::span<const double>(r));
    CHECK(wbits == std::vector<uint8_t>{0, 1, 0, 0});
    const BitVec w = pack_row(wbits);
    // mask bit b flips lrp[b]: patterns w, w^e0, w^e1, w^e0^e1
    CHECK(apply_flip_mask(w, lrp, 0) == w);
    BitVec t1 = w;
    t1.flip(0);
    CHECK(apply_flip_mask(w, lrp, 1) == t1);
    BitVec t2 = w;
    t2.flip(1);
    CHECK(apply_flip_mask(w, lrp, 2) == t2);
    BitVec t3 = t1;
    t3.flip(1);
    CHECK(apply_flip_mask(w, lrp, 3) == t3);
}

TEST_CASE("noiseless input decodes to the codeword with zero metric") {
    const ComponentCode code = ComponentCode::by_name("ebch_32_21");
    SplitMix64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const BitVec c = random_codeword(code, rng);
        std::vector<double> r(code.n());
        for (int j = 0; j < code.n(); ++j) r[j] = c.get(j) ? -1.0 : 1.0;
        const CandidateSet cs = chase_decode(r, 4, code);
        REQUIRE(!cs.empty());
        CHECK(cs.decision() == c);
        CHECK(cs.decision_metric() == 0.0);
        CHECK(cs.order[0] == cs.decision_index);
    }
}

TEST_CASE("candidate sets are deduplicated, metric-exact, and decision-optimal") {
    const ComponentCode code = ComponentCode::by_name("ebch_32_21");
    SplitMix64 rng(99);
    int nonfull = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const BitVec c = random_codeword(code, rng);
        const auto r = noisy_vector(c, 0.9, 1000 + trial);
        const CandidateSet cs = chase_decode(r, 4, code);
        REQUIRE(static_cast<int>(cs.size()) <= 16);
        if (cs.size() < 16) ++nonfull;
        if (cs.empty()) continue;
        for (size_t i = 0; i < cs.size(); ++i) {
            // metric recomputed independently
            REQUIRE(cs.euclid[i] == doctest::Approx(euclid_metric(r, cs.candidates[i])).epsilon(1e-12));
            // dedup: BDD maps each candidate back to itself
            auto back = bdd_decode(cs.candidates[i], code);
            REQUIRE(back.has_value());
            REQUIRE(*back == cs.candidates[i]);
            for (size_t l = i + 1; l < cs.size(); ++l) REQUIRE(cs.candidates[i] != cs.candidates[l]);
            REQUIRE(cs.decision_metric() <= cs.euclid[i]);
        }
        // order is sorted by (metric, index)
        for (size_t i = 1; i < cs.order.size(); ++i) {
            const double a = cs.euclid[cs.order[i - 1]], b = cs.euclid[cs.order[i]];
            REQUIRE((a < b || (a == b && cs.order[i - 1] < cs.order[i])));
        }
        CHECK(cs.order[0] == cs.decision_index);
    }
    CHECK(nonfull > 0);  // BDD failures make |candidates| < 2^p with positive frequency
}

TEST_CASE("empty candidate sets occur and are reported as valid outcomes") {
    const ComponentCode code = ComponentCode::by_name("ebch_32_21");
    SplitMix64 rng(5);
    bool found_empty = false;
    for (int trial = 0; trial < 400 && !found_empty; ++trial) {
        std::vector<double> r(code.n());
        for (auto& v : r) v = rng.next_uniform(-1.0, 1.0);
        const CandidateSet cs = chase_decode(r, 1, code);
        if (cs.empty()) {
            found_empty = true;
            CHECK(cs.decision_index == -1);
            CHECK(cs.order.empty());
            CHECK(cs.euclid.empty());
        }
    }
    CHECK(found_empty);
}

TEST_CASE("competitor search returns the best disagreeing candidate") {
    SUBCASE("hand-built two-candidate set") {
        CandidateSet cs;
        cs.n = 4;
        cs.p = 2;
        BitVec c1 = BitVec::from_bytes(std::vector<uint8_t>{1, 1, 0, 0});
        BitVec c2 = BitVec::from_bytes(std::vector<uint8_t>{0, 0, 0, 0});
        cs.candidates = {c1, c2};
        cs.euclid = {1.87, 2.27};
        cs.order = {0, 1};
        cs.decision_index = 0;
        auto comp = find_competitor(cs, 0);
        REQUIRE(comp.has_value());
        CHECK(*comp == 1);
        CHECK(!find_competitor(cs, 2).has_value());  // candidates agree at j=2
        CHECK_THROWS_AS(find_competitor(cs, 4), std::out_of_range);
    }
    SUBCASE("single candidate never has a competitor") {
        CandidateSet cs;
        cs.n = 4;
        cs.p = 1;
        cs.candidates = {BitVec::from_bytes(std::vector<uint8_t>{1, 0, 1, 0})};
        cs.euclid = {0.5};
        cs.order = {0};
        cs.decision_index = 0;
        for (int j = 0; j < 4; ++j) CHECK(!find_competitor(cs, j).has_value());
    }
    SUBCASE("minimality against a linear scan on real decodes") {
        const ComponentCode code = ComponentCode::by_name("ebch_32_21");
        SplitMix64 rng(1234);
        for (int trial = 0; trial < 60; ++trial) {
            const BitVec c = random_codeword(code, rng);
            const auto r = noisy_vector(c, 1.0, 4000 + trial);
            const CandidateSet cs = chase_decode(r, 5, code);
            if (cs.size() < 2) continue;
            for (int j = 0; j < code.n(); ++j) {
                const auto comp = find_competitor(cs, j);
                double best = std::numeric_limits<double>::infinity();
                int best_idx = -1;
                for (size_t i = 0; i < cs.size(); ++i) {
                    if (static_cast<int>(i) == cs.decision_index) continue;
                    if (cs.candidates[i].get(j) == cs.decision().get(j)) continue;
                    if (cs.euclid[i] < best) {
                        best = cs.euclid[i];
                        best_idx = static_cast<int>(i);
                    }
                }
                if (best_idx < 0) {
                    REQUIRE(!comp.has_value());
                } else {
                    REQUIRE(comp.has_value());
                    REQUIRE(cs.euclid[*comp] == best);
                }
            }
        }
    }
}

TEST_CASE("destructive distance sums only hard-decision disagreements") {
    const std::vector<double> r = {0.1, -0.2};
    CHECK(destructive_distance(r, BitVec::from_bytes(std::vector<uint8_t>{0, 1})) == 0.0);
    // c=(1,1): only j=0 disagrees with psi(r)=(0,1); (0.1-(-1))^2 = 1.21
    CHECK(destructive_distance(r, BitVec::from_bytes(std::vector<uint8_t>{1, 1})) == doctest::Approx(1.21).epsilon(1e-12));
    CHECK_THROWS_AS(destructive_distance(r, BitVec(3)), std::invalid_argument);

    const ComponentCode code = ComponentCode::by_name("ebch_32_21");
    SplitMix64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const BitVec c = random_codeword(code, rng);
        const auto rv = noisy_vector(c, 0.8, 7000 + trial);
        const CandidateSet cs = chase_decode(rv, 4, code);
        for (size_t i = 0; i < cs.size(); ++i) {
            const double dd = destructive_distance(rv, cs.candidates[i]);
            CHECK(dd >= 0.0);
            CHECK(dd <= cs.euclid[i] + 1e-12);
        }
    }
}

TEST_CASE("chase decision matches exhaustive search over the flip-pattern closure") {
    // Independent oracle: rebuild the candidate list by explicit pattern
    // enumeration with apply_flip_mask and per-pattern BDD, then compare.
    const ComponentCode code = ComponentCode::by_name("ebch_32_21");
    SplitMix64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const BitVec c = random_codeword(code, rng);
        const auto r = noisy_vector(c, 1.1, 9000 + trial);
        const int p = 4;
        const CandidateSet cs = chase_decode(r, p, code);

        const auto lrp = least_reliable_positions(r, p);
        const BitVec w = pack_row(hard_decision(std::span<const double>(r)));
        std::vector<BitVec> expect;
        for (uint32_t mask = 0; mask < (1u << p); ++mask) {
            const auto out = bdd_decode(apply_flip_mask(w, lrp, mask), code);
            if (!out) continue;
            if (std::find(expect.begin(), expect.end(), *out) == expect.end()) expect.push_back(*out);
        }
        REQUIRE(cs.size() == expect.size());
        for (size_t i = 0; i < expect.size(); ++i) REQUIRE(cs.candidates[i] == expect[i]);
        if (!cs.empty()) {
            int best = 0;
            for (size_t i = 1; i < expect.size(); ++i)
                if (euclid_metric(r, expect[i]) < euclid_metric(r, expect[best])) best = static_cast<int>(i);
            REQUIRE(cs.decision_index == best);
        }
    }
}
