#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcdec/codec.hpp"
#include "pcdec/confidence.hpp"
#include "pcdec/pyndiah.hpp"

namespace pcdec {

/// One Monte Carlo operating point. Frames are drawn from per-frame seed
/// substreams, so results are bit-identical for any thread count.
struct SimConfig {
    std::string code_name = "ebch_256_239";
    DecoderParams params;
    const ConfidenceModel* model = nullptr;
    double ebn0_db = 3.65;
    uint64_t max_frames = 1000;
    uint64_t fe_target = 0;  // 0 = run exactly max_frames
    uint64_t seed = 1;
    int threads = 1;
    bool all_zero = false;  // skip message sampling/encoding, send the zero codeword
};

struct SimPointResult {
    double ebn0_db = 0.0;
    double esn0_db = 0.0;
    uint64_t frames = 0;
    uint64_t frame_errors = 0;
    double fer = 0.0;
    uint64_t bit_errors = 0;
    double ber = 0.0;
    double flag_rate = 0.0;  // flagged component decodings / total component decodings
    double seconds = 0.0;
    uint64_t seed = 0;
};

SimPointResult simulate_point(const SimConfig& cfg);
std::vector<SimPointResult> sweep(const SimConfig& base, const std::vector<double>& ebn0_points);

/// CSV with header: ebn0,esn0,frames,fe,fer,ber,be,flag_rate,seconds
std::string results_to_csv(const std::vector<SimPointResult>& results);
std::string results_to_json(const std::vector<SimPointResult>& results);
void write_results(const std::vector<SimPointResult>& results, const std::string& path, const std::string& format);

/// Random search over decoder parameters at one operating point. Samples
/// alpha and beta as sorted uniform draws (nondecreasing over half-iterations)
/// and gamma/t2 where the variant uses them, then keeps the BER argmin
/// (ties keep the earliest trial). Evaluation reuses one fixed seed so trials
/// see identical noise.
struct TuneConfig {
    SimConfig eval;  // params.variant/iterations/chase_p define the search shape
    int trials = 100;
    uint64_t search_seed = 7;
    bool tune_alpha_beta = true;  // false: keep eval.params alpha/beta, sample only gamma/t2
    double alpha_min = 0.1, alpha_max = 2.0;
    double beta_min = 0.1, beta_max = 3.0;
    double gamma_min = 0.0, gamma_max = 1.0;
    double t2_min = 0.0, t2_max = 2.0;
};

struct TuneResult {
    DecoderParams best_params;
    SimPointResult best_eval;
    int best_trial = -1;
    std::vector<double> trial_bers;
};

TuneResult tune_random_search(const TuneConfig& cfg);

}  // namespace pcdec
