#include "pcdec/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pcdec/rng.hpp"

namespace pcdec {

FeatureVector extract_features(const CandidateSet& cs, double sigma, int p, int n, std::span<const double> r,
                               CostCounters* counters) {
    if (cs.empty()) throw std::invalid_argument("extract_features: empty candidate set");
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("extract_features: vector length != n");
    if (counters) ++counters->component_decodings;

    FeatureVector fv;
    fv.x[0] = sigma;
    fv.x[1] = static_cast<double>(cs.size()) / std::ldexp(1.0, p);
    // Four best candidates by metric; with fewer than four, the worst present
    // candidate fills the remaining slots (and is re-evaluated, keeping the
    // per-decoding cost fixed at four destructive evaluations).
    for (int s = 0; s < 4; ++s) {
        const int oi = std::min<int>(s, static_cast<int>(cs.size()) - 1);
        const int idx = cs.order[oi];
        fv.x[2 + s] = cs.euclid[idx] / static_cast<double>(n);
        fv.x[6 + s] = destructive_distance(r, cs.candidates[idx]);
        if (counters) ++counters->destructive_evals;
    }
    return fv;
}

double sigmoid(double s) {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

Prediction predict_flag(const ConfidenceModel& model, const FeatureVector& fv, CostCounters* counters) {
    double score = model.bias;
    for (int f = 0; f < kNumFeatures; ++f) score += model.weights[f] * fv.x[f];
    if (counters) {
        ++counters->model_evals;
        counters->model_mults += kNumFeatures;
        counters->model_adds += kNumFeatures;
    }
    return Prediction{score, score > 0.0};
}

namespace {

// d/ds of binary cross-entropy at score s with target y is sigmoid(s) - y.
double sample_score(const ConfidenceModel& m, const LabeledSample& s) {
    double score = m.bias;
    for (int f = 0; f < kNumFeatures; ++f) score += m.weights[f] * s.features.x[f];
    return score;
}

// log(1 + e^s) without overflow.
double softplus(double s) { return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

void require_both_classes(std::span<const LabeledSample> dataset, const char* who) {
    bool have0 = false, have1 = false;
    for (const auto& s : dataset) {
        (s.label ? have1 : have0) = true;
        if (have0 && have1) return;
    }
    throw std::invalid_argument(std::string(who) + ": dataset must contain both labels");
}

}  // namespace

double bce_loss(const ConfidenceModel& model, std::span<const LabeledSample> dataset) {
    if (dataset.empty()) throw std::invalid_argument("bce_loss: empty dataset");
    double acc = 0.0;
    for (const auto& s : dataset) {
        const double sc = sample_score(model, s);
        acc += softplus(sc) - (s.label ? sc : 0.0);
    }
    return acc / static_cast<double>(dataset.size());
}

void bce_gradient(const ConfidenceModel& model, std::span<const LabeledSample> dataset,
                  std::array<double, kNumFeatures>& grad_w, double& grad_bias) {
    if (dataset.empty()) throw std::invalid_argument("bce_gradient: empty dataset");
    grad_w.fill(0.0);
    grad_bias = 0.0;
    for (const auto& s : dataset) {
        const double e = sigmoid(sample_score(model, s)) - static_cast<double>(s.label);
        for (int f = 0; f < kNumFeatures; ++f) grad_w[f] += e * s.features.x[f];
        grad_bias += e;
    }
    const double inv = 1.0 / static_cast<double>(dataset.size());
    for (double& g : grad_w) g *= inv;
    grad_bias *= inv;
}

ConfidenceModel train_model(std::span<const LabeledSample> dataset, const TrainOptions& opts) {
    if (dataset.empty()) throw std::invalid_argument("train_model: empty dataset");
    require_both_classes(dataset, "train_model");
    if (opts.lr <= 0.0 || opts.epochs < 1 || opts.batch < 1) throw std::invalid_argument("train_model: bad options");

    ConfidenceModel model{};
    model.seed = opts.seed;

    std::vector<uint32_t> idx(dataset.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<uint32_t>(i);

    std::array<double, kNumFeatures> gw{};
    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
        auto rng = substream(opts.seed, Stream::shuffle, static_cast<uint64_t>(epoch));
        shuffle_inplace(idx, rng);
        for (size_t start = 0; start < idx.size(); start += static_cast<size_t>(opts.batch)) {
            const size_t end = std::min(start + static_cast<size_t>(opts.batch), idx.size());
            gw.fill(0.0);
            double gb = 0.0;
            for (size_t i = start; i < end; ++i) {
                const LabeledSample& s = dataset[idx[i]];
                const double e = sigmoid(sample_score(model, s)) - static_cast<double>(s.label);
                for (int f = 0; f < kNumFeatures; ++f) gw[f] += e * s.features.x[f];
                gb += e;
            }
            const double step = opts.lr / static_cast<double>(end - start);
            for (int f = 0; f < kNumFeatures; ++f) model.weights[f] -= step * gw[f];
            model.bias -= step * gb;
        }
    }
    return model;
}

std::array<std::array<double, 2>, 2> confusion(const ConfidenceModel& model, std::span<const LabeledSample> dataset) {
    // Column 0: ground truth erroneous (label 1); column 1: ground truth correct.
    uint64_t total[2] = {0, 0};
    uint64_t flagged[2] = {0, 0};
    for (const auto& s : dataset) {
        const int col = s.label ? 0 : 1;
        ++total[col];
        if (predict_flag(model, s.features).flag) ++flagged[col];
    }
    if (total[0] == 0 || total[1] == 0) throw std::invalid_argument("confusion: a ground-truth class is empty");
    std::array<std::array<double, 2>, 2> m{};
    for (int col = 0; col < 2; ++col) {
        m[0][col] = static_cast<double>(flagged[col]) / static_cast<double>(total[col]);
        m[1][col] = 1.0 - m[0][col];
    }
    return m;
}

std::string model_to_json(const ConfidenceModel& model) {
    nlohmann::ordered_json j;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    std::vector<std::string> order;
    order.reserve(kFeatureNames.size());
    for (std::string_view name : kFeatureNames) order.emplace_back(name);
    j["feature_order"] = order;
    j["metadata"] = {{"dataset_info", model.dataset_info}, {"seed", model.seed}};
    return j.dump(2) + "\n";
}

ConfidenceModel model_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ConfidenceModel m;
    const auto w = j.at("weights").get<std::vector<double>>();
    if (w.size() != kNumFeatures) throw std::runtime_error("model_from_json: expected 10 weights");
    std::copy(w.begin(), w.end(), m.weights.begin());
    m.bias = j.at("bias").get<double>();
    const auto order = j.at("feature_order").get<std::vector<std::string>>();
    if (order.size() != kNumFeatures) throw std::runtime_error("model_from_json: expected 10 feature names");
    for (int f = 0; f < kNumFeatures; ++f)
        if (order[f] != kFeatureNames[f]) throw std::runtime_error("model_from_json: feature order mismatch");
    if (j.contains("metadata")) {
        const auto& md = j.at("metadata");
        if (md.contains("dataset_info")) m.dataset_info = md.at("dataset_info").get<std::string>();
        if (md.contains("seed")) m.seed = md.at("seed").get<uint64_t>();
    }
    return m;
}

void save_model(const ConfidenceModel& model, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_model: cannot open \"" + path + "\" for writing");
    f << model_to_json(model);
    if (!f) throw std::runtime_error("save_model: write to \"" + path + "\" failed");
}

ConfidenceModel load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_model: cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << f.rdbuf();
    return model_from_json(ss.str());
}

void save_dataset_csv(std::span<const LabeledSample> dataset, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_dataset_csv: cannot open \"" + path + "\" for writing");
    for (size_t i = 0; i < kFeatureNames.size(); ++i) f << kFeatureNames[i] << ',';
    f << "label\n";
    char buf[32];
    for (const auto& s : dataset) {
        for (double x : s.features.x) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            f << buf << ',';
        }
        f << static_cast<int>(s.label) << '\n';
    }
    if (!f) throw std::runtime_error("save_dataset_csv: write to \"" + path + "\" failed");
}

std::vector<LabeledSample> load_dataset_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_dataset_csv: cannot open \"" + path + "\"");
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("load_dataset_csv: empty file");
    {
        std::string expected;
        for (size_t i = 0; i < kFeatureNames.size(); ++i) {
            expected += kFeatureNames[i];
            expected += ',';
        }
        expected += "label";
        if (line != expected) throw std::runtime_error("load_dataset_csv: unexpected header");
    }
    std::vector<LabeledSample> out;
    size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        LabeledSample s;
        size_t pos = 0;
        for (int f2 = 0; f2 <= kNumFeatures; ++f2) {
            const size_t comma = line.find(',', pos);
            const std::string field =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (f2 < kNumFeatures) {
                s.features.x[f2] = std::stod(field);
                if (comma == std::string::npos)
                    throw std::runtime_error("load_dataset_csv: short row at line " + std::to_string(lineno));
                pos = comma + 1;
            } else {
                const int v = std::stoi(field);
                if (v != 0 && v != 1)
                    throw std::runtime_error("load_dataset_csv: bad label at line " + std::to_string(lineno));
                s.label = static_cast<uint8_t>(v);
            }
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace pcdec
