#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcdec/chase.hpp"
#include "pcdec/codec.hpp"
#include "pcdec/confidence.hpp"
#include "pcdec/counters.hpp"
#include "pcdec/mat.hpp"

namespace pcdec {

enum class Variant {
    baseline,     // plain iterated Chase decoding with soft extrinsic output
    scaled_top2,  // flag rows whose two best candidates are too close
    nn_assisted,  // flag rows the logistic confidence model deems unreliable
    genie,        // flag rows whose hard decision differs from the truth
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// Configuration for one decoder instance. alpha/beta/gamma hold one entry
/// per half-iteration (2 * iterations in total).
struct DecoderParams {
    Variant variant = Variant::baseline;
    int iterations = 4;  // full iterations; half-iterations alternate rows/columns
    int chase_p = 6;     // least-reliable positions per component decoding
    std::vector<double> alpha;  // extrinsic weight per half-iteration
    std::vector<double> beta;   // missing-competitor reliability per half-iteration
    std::vector<double> gamma;  // flagged-row scale per half-iteration
    double t2 = 0.5;            // metric-gap threshold (scaled_top2 only)
    int ibdd_iters = 2;         // hard-decision cleanup rounds after the soft pass

    int half_iterations() const { return 2 * iterations; }
    void validate() const;  // throws std::invalid_argument on bad shapes/values
};

DecoderParams default_params(Variant v, int iterations = 4, int chase_p = 6);

std::string params_to_json(const DecoderParams& params);
DecoderParams params_from_json(const std::string& text);
void save_params(const DecoderParams& params, const std::string& path);
DecoderParams load_params(const std::string& path);

struct HalfIterStats {
    int half_iter = 0;
    uint64_t rows = 0;
    uint64_t flagged = 0;
    uint64_t empty_candidate_rows = 0;
    double mean_abs_L_pre = 0.0;   // before normalization
    double mean_abs_L_post = 0.0;  // after normalization, before flag scaling
};

struct DecodeTrace {
    std::vector<HalfIterStats> half_iters;
};

/// Called once per component decoding, after the flag decision. `features`
/// is empty when the candidate set was empty or the variant computed none.
using RowObserver = std::function<void(const CandidateSet& cs, std::span<const double> features, bool flagged,
                                       bool decision_erroneous)>;

/// Optional inputs/outputs threaded through decode_product.
struct DecodeIO {
    double sigma = 0.0;                      // channel noise level, feature input
    const ConfidenceModel* model = nullptr;  // required for nn_assisted
    const BitMatrix* truth = nullptr;        // required for genie and observers
    DecodeTrace* trace = nullptr;
    CostCounters* counters = nullptr;
    RowObserver observer;
    uint64_t flagged_rows = 0;  // out: flag decisions across all half-iterations
    uint64_t total_rows = 0;    // out: component decodings across all half-iterations
};

/// Soft-output component decoding of one row. Writes the extrinsic vector L
/// (before normalization) and returns the hard decision, or std::nullopt when
/// the Chase pass produced no candidate (L is then all zeros).
std::optional<BitVec> compute_extrinsic_row(std::span<const double> r, const CandidateSet& cs, double beta,
                                            std::span<double> L_out);

/// Scales L so the mean magnitude over all entries is one. Returns the
/// pre-normalization mean; a zero matrix is left untouched and returns zero.
double normalize_L(SoftMatrix& L);

/// Metric-gap flag rule: true when fewer than two candidates exist or the
/// runner-up metric is within t2 of the best.
bool flag_top2(const CandidateSet& cs, double t2);

/// R = Y + alpha * L, elementwise.
void update_soft(const SoftMatrix& Y, const SoftMatrix& L, double alpha, SoftMatrix& R);

/// Full product decoding: 2*iterations half-iterations of row-wise Chase
/// decoding with extrinsic exchange (transposing between half-iterations),
/// hard decision, then ibdd_iters rounds of hard-decision cleanup.
BitMatrix decode_product(const SoftMatrix& Y, const DecoderParams& params, const ComponentCode& code,
                         DecodeIO* io = nullptr);

}  // namespace pcdec
