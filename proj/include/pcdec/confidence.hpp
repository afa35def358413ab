#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcdec/chase.hpp"
#include "pcdec/counters.hpp"

namespace pcdec {

struct DecoderParams;  // pyndiah.hpp

inline constexpr int kNumFeatures = 10;

/// Serialized feature order. The order is irrelevant to the trained model but
/// pinned so weight files are unambiguous.
inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "sigma", "candidate_ratio", "de1", "de2", "de3", "de4", "dd1", "dd2", "dd3", "dd4",
};

struct FeatureVector {
    std::array<double, kNumFeatures> x{};
};

/// Single-neuron logistic model: P_hat = sigmoid(w.x + bias).
struct ConfidenceModel {
    std::array<double, kNumFeatures> weights{};
    double bias = 0.0;
    std::string dataset_info;  // free-text training-set description
    uint64_t seed = 0;
};

struct Prediction {
    double score = 0.0;  // w.x + bias, sigmoid skipped at inference
    bool flag = false;   // score > 0
};

struct LabeledSample {
    FeatureVector features;
    uint8_t label = 0;  // 1 = erroneous Chase decision
};

/// The 10 inputs: noise sigma, |candidates|/2^p, the four best normalized
/// Euclidean metrics, and their destructive distances. With fewer than four
/// candidates the missing slots replicate the worst present candidate.
/// Throws on an empty candidate set; callers flag those rows directly.
FeatureVector extract_features(const CandidateSet& cs, double sigma, int p, int n, std::span<const double> r,
                               CostCounters* counters = nullptr);

double sigmoid(double s);

Prediction predict_flag(const ConfidenceModel& model, const FeatureVector& fv, CostCounters* counters = nullptr);

struct TrainOptions {
    double lr = 0.001;
    int epochs = 5000;
    int batch = 1280;
    uint64_t seed = 0;
};

/// Mini-batch gradient descent on binary cross-entropy, zero-initialized,
/// deterministic given the seed. Rejects single-class datasets.
ConfidenceModel train_model(std::span<const LabeledSample> dataset, const TrainOptions& opts = {});

double bce_loss(const ConfidenceModel& model, std::span<const LabeledSample> dataset);
void bce_gradient(const ConfidenceModel& model, std::span<const LabeledSample> dataset,
                  std::array<double, kNumFeatures>& grad_w, double& grad_bias);

/// Column-normalized 2x2 confusion matrix:
///   [0][0] flagged | erroneous      [0][1] flagged | correct
///   [1][0] not flagged | erroneous  [1][1] not flagged | correct
/// Throws when either ground-truth class is empty.
std::array<std::array<double, 2>, 2> confusion(const ConfidenceModel& model, std::span<const LabeledSample> dataset);

struct DatasetOptions {
    std::vector<double> ebn0_db;
    uint64_t frames_per_point = 100;
    uint64_t seed = 0;
    int threads = 1;
};

/// Runs ground-truth-aided decoding and emits one labeled sample per
/// component decoding with a nonempty candidate set, across all
/// half-iterations and all listed Eb/N0 points, then balances the classes by
/// downsampling the majority. Throws when no erroneous samples were seen.
std::vector<LabeledSample> generate_dataset(const ComponentCode& code, const DecoderParams& params,
                                            const DatasetOptions& opts);

// Persistence. Model files are JSON; datasets are CSV with a fixed header of
// the 10 feature names plus "label".
void save_model(const ConfidenceModel& model, const std::string& path);
ConfidenceModel load_model(const std::string& path);
std::string model_to_json(const ConfidenceModel& model);
ConfidenceModel model_from_json(const std::string& text);

void save_dataset_csv(std::span<const LabeledSample> dataset, const std::string& path);
std::vector<LabeledSample> load_dataset_csv(const std::string& path);

}  // namespace pcdec
