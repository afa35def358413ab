#include "pcdec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "pcdec/channel.hpp"
#include "pcdec/rng.hpp"

namespace pcdec {

namespace {

struct FrameOutcome {
    uint32_t bit_errors = 0;
    uint8_t frame_error = 0;
    uint64_t flagged_rows = 0;
    uint64_t total_rows = 0;
};

FrameOutcome run_frame(const ComponentCode& code, const SimConfig& cfg, const ChannelSpec& spec, uint64_t frame) {
    BitMatrix cw;
    if (cfg.all_zero) {
        cw = BitMatrix(code.n(), code.n(), 0);
    } else {
        auto rng = substream(cfg.seed, Stream::message, frame);
        cw = pc_encode(random_message(code.k(), rng), code);
    }
    const SoftMatrix y = transmit(cw, spec, frame);

    DecodeIO io;
    io.sigma = spec.sigma;
    io.model = cfg.model;
    if (cfg.params.variant == Variant::genie) io.truth = &cw;
    const BitMatrix out = decode_product(y, cfg.params, code, &io);

    FrameOutcome fo;
    const auto a = out.data();
    const auto b = cw.data();
    for (size_t i = 0; i < a.size(); ++i) fo.bit_errors += a[i] != b[i];
    fo.frame_error = fo.bit_errors > 0;
    fo.flagged_rows = io.flagged_rows;
    fo.total_rows = io.total_rows;
    return fo;
}

}  // namespace

SimPointResult simulate_point(const SimConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ComponentCode code = ComponentCode::by_name(cfg.code_name);
    cfg.params.validate();
    if (cfg.max_frames < 1) throw std::invalid_argument("simulate_point: max_frames must be >= 1");
    if (cfg.params.variant == Variant::nn_assisted && cfg.model == nullptr)
        throw std::invalid_argument("simulate_point: nn_assisted requires a confidence model");

    const int n = code.n(), k = code.k();
    const double rate = (static_cast<double>(k) * k) / (static_cast<double>(n) * n);
    const ChannelSpec spec = make_channel(cfg.ebn0_db, rate, cfg.seed);
    const int threads = std::max(1, cfg.threads);

    // The early-stop rule is evaluated on fixed frame-index batches, so the
    // set of simulated frames (hence every statistic) is independent of the
    // thread count.
    constexpr uint64_t kBatch = 32;
    uint64_t frames = 0, fe = 0, be = 0, flagged = 0, total_rows = 0;
    std::vector<FrameOutcome> out(kBatch);
    while (frames < cfg.max_frames && (cfg.fe_target == 0 || fe < cfg.fe_target)) {
        const uint64_t begin = frames;
        const uint64_t count = std::min(kBatch, cfg.max_frames - frames);
        if (threads == 1) {
            for (uint64_t i = 0; i < count; ++i) out[i] = run_frame(code, cfg, spec, begin + i);
        } else {
            std::atomic<uint64_t> next{0};
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (int w = 0; w < threads; ++w)
                pool.emplace_back([&] {
                    for (uint64_t i; (i = next.fetch_add(1)) < count;)
                        out[i] = run_frame(code, cfg, spec, begin + i);
                });
            for (auto& th : pool) th.join();
        }
        for (uint64_t i = 0; i < count; ++i) {
            be += out[i].bit_errors;
            fe += out[i].frame_error;
            flagged += out[i].flagged_rows;
            total_rows += out[i].total_rows;
        }
        frames += count;
    }

    SimPointResult r;
    r.ebn0_db = cfg.ebn0_db;
    r.esn0_db = ebn0_to_esn0(cfg.ebn0_db, rate);
    r.frames = frames;
    r.frame_errors = fe;
    r.fer = static_cast<double>(fe) / static_cast<double>(frames);
    r.bit_errors = be;
    r.ber = static_cast<double>(be) / (static_cast<double>(frames) * n * n);
    r.flag_rate = total_rows ? static_cast<double>(flagged) / static_cast<double>(total_rows) : 0.0;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.seed = cfg.seed;
    return r;
}

std::vector<SimPointResult> sweep(const SimConfig& base, const std::vector<double>& ebn0_points) {
    if (ebn0_points.empty()) throw std::invalid_argument("sweep: no operating points");
    std::vector<SimPointResult> results;
    results.reserve(ebn0_points.size());
    for (double point : ebn0_points) {
        SimConfig cfg = base;
        cfg.ebn0_db = point;
        results.push_back(simulate_point(cfg));
    }
    return results;
}

std::string results_to_csv(const std::vector<SimPointResult>& results) {
    std::ostringstream ss;
    ss << "ebn0,esn0,frames,fe,fer,ber,be,flag_rate,seconds\n";
    char buf[256];
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%llu,%llu,%.10g,%.10g,%llu,%.10g,%.3f\n", r.ebn0_db, r.esn0_db,
                      static_cast<unsigned long long>(r.frames), static_cast<unsigned long long>(r.frame_errors),
                      r.fer, r.ber, static_cast<unsigned long long>(r.bit_errors), r.flag_rate, r.seconds);
        ss << buf;
    }
    return ss.str();
}

std::string results_to_json(const std::vector<SimPointResult>& results) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json j;
        j["ebn0"] = r.ebn0_db;
        j["esn0"] = r.esn0_db;
        j["frames"] = r.frames;
        j["fe"] = r.frame_errors;
        j["fer"] = r.fer;
        j["ber"] = r.ber;
        j["be"] = r.bit_errors;
        j["flag_rate"] = r.flag_rate;
        j["seconds"] = r.seconds;
        j["seed"] = r.seed;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

void write_results(const std::vector<SimPointResult>& results, const std::string& path, const std::string& format) {
    std::string text;
    if (format == "csv")
        text = results_to_csv(results);
    else if (format == "json")
        text = results_to_json(results);
    else
        throw std::invalid_argument("write_results: format must be csv or json");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_results: cannot open \"" + path + "\" for writing");
    f << text;
    if (!f) throw std::runtime_error("write_results: write to \"" + path + "\" failed");
}

namespace {

std::vector<double> sorted_uniforms(SplitMix64& rng, int count, double lo, double hi) {
    std::vector<double> v(count);
    for (double& x : v) x = rng.next_uniform(lo, hi);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<double> iid_uniforms(SplitMix64& rng, int count, double lo, double hi) {
    std::vector<double> v(count);
    for (double& x : v) x = rng.next_uniform(lo, hi);
    return v;
}

}  // namespace

TuneResult tune_random_search(const TuneConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("tune_random_search: trials must be >= 1");
    if (!(cfg.alpha_min > 0.0 && cfg.alpha_min <= cfg.alpha_max) ||
        !(cfg.beta_min > 0.0 && cfg.beta_min <= cfg.beta_max) ||
        !(cfg.gamma_min >= 0.0 && cfg.gamma_min <= cfg.gamma_max && cfg.gamma_max <= 1.0) ||
        !(cfg.t2_min <= cfg.t2_max))
        throw std::invalid_argument("tune_random_search: empty or invalid search space");

    auto rng = substream(cfg.search_seed, Stream::tuner, 0);
    TuneResult res;
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.trials; ++trial) {
        DecoderParams p = cfg.eval.params;
        const int h = p.half_iterations();
        if (cfg.tune_alpha_beta) {
            p.alpha = sorted_uniforms(rng, h, cfg.alpha_min, cfg.alpha_max);
            p.beta = sorted_uniforms(rng, h, cfg.beta_min, cfg.beta_max);
        }
        switch (p.variant) {
            case Variant::baseline:
                break;
            case Variant::scaled_top2:
                p.t2 = rng.next_uniform(cfg.t2_min, cfg.t2_max);
                p.gamma = iid_uniforms(rng, h, cfg.gamma_min, cfg.gamma_max);
                break;
            case Variant::nn_assisted:
                p.gamma = iid_uniforms(rng, h, cfg.gamma_min, cfg.gamma_max);
                break;
            case Variant::genie:
                p.gamma.assign(h, 0.0);
                break;
        }

        SimConfig ec = cfg.eval;
        ec.params = p;
        const SimPointResult r = simulate_point(ec);
        res.trial_bers.push_back(r.ber);
        if (r.ber < best) {
            best = r.ber;
            res.best_params = p;
            res.best_eval = r;
            res.best_trial = trial;
        }
    }
    return res;
}

}  // namespace pcdec
