#pragma once

#include <cstdint>

namespace pcdec {

/// Operation counters for the confidence path. Optional everywhere; pass a
/// non-null pointer to audit the per-component-decoding cost.
struct CostCounters {
    uint64_t component_decodings = 0;  // nonempty candidate sets seen by the confidence path
    uint64_t destructive_evals = 0;    // destructive Euclidean distance evaluations
    uint64_t model_evals = 0;
    uint64_t model_mults = 0;
    uint64_t model_adds = 0;
};

}  // namespace pcdec
