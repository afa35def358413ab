#include "pcdec/pyndiah.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pcdec/channel.hpp"

namespace pcdec {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::baseline: return "baseline";
        case Variant::scaled_top2: return "scaled_top2";
        case Variant::nn_assisted: return "nn_assisted";
        case Variant::genie: return "genie";
    }
    throw std::invalid_argument("variant_name: unknown variant");
}

Variant variant_from_name(const std::string& name) {
    if (name == "baseline") return Variant::baseline;
    if (name == "scaled_top2") return Variant::scaled_top2;
    if (name == "nn_assisted") return Variant::nn_assisted;
    if (name == "genie") return Variant::genie;
    throw std::invalid_argument("variant_from_name: unknown variant \"" + name + "\"");
}

void DecoderParams::validate() const {
    if (iterations < 1) throw std::invalid_argument("DecoderParams: iterations must be >= 1");
    if (chase_p < 1) throw std::invalid_argument("DecoderParams: p must be >= 1");
    if (ibdd_iters < 0) throw std::invalid_argument("DecoderParams: ibdd_iters must be >= 0");
    const size_t h = static_cast<size_t>(half_iterations());
    if (alpha.size() != h || beta.size() != h || gamma.size() != h)
        throw std::invalid_argument("DecoderParams: alpha/beta/gamma must have one entry per half-iteration");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument("DecoderParams: alpha entries must be positive");
    for (double b : beta)
        if (!(b > 0.0)) throw std::invalid_argument("DecoderParams: beta entries must be positive");
    for (double g : gamma)
        if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("DecoderParams: gamma entries must lie in [0,1]");
}

DecoderParams default_params(Variant v, int iterations, int chase_p) {
    // Classic fallback schedules, extended with 1.0 beyond eight half-iterations.
    static constexpr double kAlpha[8] = {0.2, 0.3, 0.5, 0.7, 0.9, 1.0, 1.0, 1.0};
    static constexpr double kBeta[8] = {0.2, 0.4, 0.6, 0.8, 1.0, 1.0, 1.0, 1.0};
    DecoderParams p;
    p.variant = v;
    p.iterations = iterations;
    p.chase_p = chase_p;
    const int h = p.half_iterations();
    p.alpha.resize(h);
    p.beta.resize(h);
    for (int i = 0; i < h; ++i) {
        p.alpha[i] = i < 8 ? kAlpha[i] : 1.0;
        p.beta[i] = i < 8 ? kBeta[i] : 1.0;
    }
    if (v == Variant::genie) {
        // The reference decoder zeroes wrong-decision rows and runs unweighted.
        std::fill(p.alpha.begin(), p.alpha.end(), 1.0);
        std::fill(p.beta.begin(), p.beta.end(), 1.0);
        p.gamma.assign(h, 0.0);
    } else {
        p.gamma.assign(h, 1.0);
    }
    return p;
}

std::string params_to_json(const DecoderParams& params) {
    params.validate();
    nlohmann::ordered_json j;
    j["variant"] = variant_name(params.variant);
    j["I"] = params.iterations;
    j["p"] = params.chase_p;
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["gamma"] = params.gamma;
    j["t2"] = params.t2;
    j["ibdd_iters"] = params.ibdd_iters;
    return j.dump(2) + "\n";
}

DecoderParams params_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    DecoderParams p;
    p.variant = variant_from_name(j.at("variant").get<std::string>());
    p.iterations = j.at("I").get<int>();
    p.chase_p = j.at("p").get<int>();
    p.alpha = j.at("alpha").get<std::vector<double>>();
    p.beta = j.at("beta").get<std::vector<double>>();
    p.gamma = j.at("gamma").get<std::vector<double>>();
    p.t2 = j.at("t2").get<double>();
    p.ibdd_iters = j.at("ibdd_iters").get<int>();
    p.validate();
    return p;
}

void save_params(const DecoderParams& params, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_params: cannot open \"" + path + "\" for writing");
    f << params_to_json(params);
    if (!f) throw std::runtime_error("save_params: write to \"" + path + "\" failed");
}

DecoderParams load_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_params: cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << f.rdbuf();
    return params_from_json(ss.str());
}

std::optional<BitVec> compute_extrinsic_row(std::span<const double> r, const CandidateSet& cs, double beta,
                                            std::span<double> L_out) {
    const int n = static_cast<int>(r.size());
    if (static_cast<int>(L_out.size()) != n) throw std::invalid_argument("compute_extrinsic_row: length mismatch");
    if (cs.empty()) {
        std::fill(L_out.begin(), L_out.end(), 0.0);
        return std::nullopt;
    }

    const BitVec& d = cs.decision();
    const double de = cs.decision_metric();

    // Per-position competitor metric: first candidate in (metric, index) order
    // that disagrees with the decision claims every still-open position.
    std::vector<double> comp(n, -1.0);
    int assigned = 0;
    const auto& dw = d.words();
    for (int idx : cs.order) {
        if (idx == cs.decision_index) continue;
        if (assigned == n) break;
        const auto& cw = cs.candidates[idx].words();
        for (int wi = 0; wi * 64 < n; ++wi) {
            uint64_t x = cw[wi] ^ dw[wi];
            while (x) {
                const int j = wi * 64 + std::countr_zero(x);
                x &= x - 1;
                if (comp[j] < 0.0) {
                    comp[j] = cs.euclid[idx];
                    ++assigned;
                }
            }
        }
    }

    for (int j = 0; j < n; ++j) {
        const double mu = d.get(j) ? -1.0 : 1.0;
        L_out[j] = comp[j] >= 0.0 ? mu * (comp[j] - de) / 4.0 - r[j] : mu * beta;
    }
    return d;
}

double normalize_L(SoftMatrix& L) {
    const auto v = L.data();
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += std::fabs(x);
    const double mean = acc / static_cast<double>(v.size());
    if (mean == 0.0) return 0.0;
    const double inv = 1.0 / mean;
    for (double& x : v) x *= inv;
    return mean;
}

bool flag_top2(const CandidateSet& cs, double t2) {
    if (cs.size() < 2) return true;
    return cs.euclid[cs.order[1]] - cs.euclid[cs.order[0]] < t2;
}

void update_soft(const SoftMatrix& Y, const SoftMatrix& L, double alpha, SoftMatrix& R) {
    if (Y.rows() != L.rows() || Y.cols() != L.cols()) throw std::invalid_argument("update_soft: shape mismatch");
    R = Y;
    const auto rv = R.data();
    const auto lv = L.data();
    for (size_t i = 0; i < rv.size(); ++i) rv[i] += alpha * lv[i];
}

BitMatrix decode_product(const SoftMatrix& Y_in, const DecoderParams& params, const ComponentCode& code,
                         DecodeIO* io) {
    params.validate();
    const int n = code.n();
    if (Y_in.rows() != n || Y_in.cols() != n) throw std::invalid_argument("decode_product: matrix is not n x n");
    const ConfidenceModel* model = io ? io->model : nullptr;
    const BitMatrix* truth_in = io ? io->truth : nullptr;
    if (params.variant == Variant::nn_assisted && model == nullptr)
        throw std::invalid_argument("decode_product: nn_assisted requires a confidence model");
    if (params.variant == Variant::genie && truth_in == nullptr)
        throw std::invalid_argument("decode_product: genie requires the transmitted codeword");

    SoftMatrix Y = Y_in;
    SoftMatrix R = Y_in;
    SoftMatrix L(n, n, 0.0);
    BitMatrix truth;
    if (truth_in != nullptr) {
        if (truth_in->rows() != n || truth_in->cols() != n)
            throw std::invalid_argument("decode_product: truth matrix is not n x n");
        truth = *truth_in;
    }

    std::vector<uint8_t> flags(n, 0);
    const int half_total = params.half_iterations();
    for (int h = 0; h < half_total; ++h) {
        uint64_t flagged_cnt = 0, empty_cnt = 0;
        for (int i = 0; i < n; ++i) {
            const auto rrow = R.row(i);
            const CandidateSet cs = chase_decode(rrow, params.chase_p, code);
            const auto decision = compute_extrinsic_row(rrow, cs, params.beta[h], L.row(i));

            bool flagged = false;
            bool erroneous = false;
            FeatureVector fv;
            bool have_fv = false;
            if (!decision) {
                flagged = true;  // no decision to trust; L row is already zero
                ++empty_cnt;
            } else {
                if (truth_in != nullptr) erroneous = (*decision != pack_row(truth.row(i)));
                switch (params.variant) {
                    case Variant::baseline:
                        break;
                    case Variant::scaled_top2:
                        flagged = flag_top2(cs, params.t2);
                        break;
                    case Variant::nn_assisted:
                        fv = extract_features(cs, io->sigma, params.chase_p, n, rrow, io->counters);
                        have_fv = true;
                        flagged = predict_flag(*model, fv, io->counters).flag;
                        break;
                    case Variant::genie:
                        flagged = erroneous;
                        break;
                }
                if (!have_fv && io && io->observer) {
                    fv = extract_features(cs, io->sigma, params.chase_p, n, rrow, nullptr);
                    have_fv = true;
                }
            }
            flags[i] = flagged ? 1 : 0;
            if (flagged) ++flagged_cnt;
            if (io && io->observer)
                io->observer(cs, have_fv ? std::span<const double>(fv.x) : std::span<const double>(), flagged,
                             erroneous);
        }

        const double pre_mean = normalize_L(L);
        if (io) {
            io->flagged_rows += flagged_cnt;
            io->total_rows += static_cast<uint64_t>(n);
            if (io->trace) {
                HalfIterStats st;
                st.half_iter = h;
                st.rows = static_cast<uint64_t>(n);
                st.flagged = flagged_cnt;
                st.empty_candidate_rows = empty_cnt;
                st.mean_abs_L_pre = pre_mean;
                double acc = 0.0;
                for (double x : L.data()) acc += std::fabs(x);
                st.mean_abs_L_post = acc / static_cast<double>(n) / static_cast<double>(n);
                io->trace->half_iters.push_back(st);
            }
        }

        const double g = params.gamma[h];
        for (int i = 0; i < n; ++i) {
            if (!flags[i]) continue;
            for (double& x : L.row(i)) x *= g;
        }

        update_soft(Y, L, params.alpha[h], R);

        Y.transpose_inplace();
        R.transpose_inplace();
        L.transpose_inplace();
        if (truth_in != nullptr) truth.transpose_inplace();
    }

    return ibdd_decode(hard_decision(R), params.ibdd_iters, code);
}

}  // namespace pcdec
