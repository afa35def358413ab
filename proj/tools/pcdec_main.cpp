#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcdec/harness.hpp"

namespace {

using namespace pcdec;

// Shared knobs; each subcommand registers the subset it understands.
struct CommonOpts {
    std::string code = "ebch_256_239";
    std::string variant;
    std::vector<double> ebn0;
    uint64_t frames = 1000;
    uint64_t fe_target = 100;
    std::string params_file;
    std::string model_file;
    uint64_t seed = 1;
    int threads = 1;
    std::string out;
    std::string format = "csv";
};

DecoderParams resolve_params(const CommonOpts& o) {
    DecoderParams p;
    if (!o.params_file.empty()) {
        p = load_params(o.params_file);
        if (!o.variant.empty()) p.variant = variant_from_name(o.variant);
    } else {
        p = default_params(o.variant.empty() ? Variant::baseline : variant_from_name(o.variant));
    }
    return p;
}

SimConfig make_sim_config(const CommonOpts& o, const DecoderParams& p, const ConfidenceModel* model) {
    SimConfig cfg;
    cfg.code_name = o.code;
    cfg.params = p;
    cfg.model = model;
    cfg.max_frames = o.frames;
    cfg.fe_target = o.fe_target;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    return cfg;
}

void emit_results(const std::vector<SimPointResult>& results, const CommonOpts& o) {
    if (o.out.empty())
        std::cout << (o.format == "json" ? results_to_json(results) : results_to_csv(results));
    else
        write_results(results, o.out, o.format);
}

void add_sim_flags(CLI::App* cmd, CommonOpts& o, bool many_points) {
    cmd->add_option("--code", o.code, "Component code name (ebch_256_239 or ebch_32_21)");
    cmd->add_option("--variant", o.variant, "baseline | scaled_top2 | nn_assisted | genie");
    auto* e = cmd->add_option("--ebn0", o.ebn0, "Eb/N0 operating point(s), dB")->required()->delimiter(',');
    if (!many_points) e->expected(1);
    cmd->add_option("--frames", o.frames, "Maximum frames per point");
    cmd->add_option("--fe-target", o.fe_target, "Stop a point after this many frame errors (0 = run all frames)");
    cmd->add_option("--params", o.params_file, "Decoder parameter JSON file");
    cmd->add_option("--model", o.model_file, "Confidence model JSON file (nn_assisted)");
    cmd->add_option("--seed", o.seed, "Simulation seed");
    cmd->add_option("--threads", o.threads, "Worker threads");
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

int run(int argc, char** argv) {
    CLI::App app{"Product-code FEC laboratory: iterated soft component decoding with confidence-scaled messages"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* sim = app.add_subcommand("simulate", "Monte Carlo BER/FER at one operating point");
    add_sim_flags(sim, o, false);

    auto* swp = app.add_subcommand("sweep", "Monte Carlo BER/FER over a list of operating points");
    add_sim_flags(swp, o, true);

    auto* ds = app.add_subcommand("dataset", "Generate labeled confidence-training samples");
    ds->add_option("--code", o.code, "Component code name");
    ds->add_option("--params", o.params_file, "Decoder parameter JSON file");
    ds->add_option("--ebn0", o.ebn0, "Eb/N0 points to mix, dB")->required()->delimiter(',');
    ds->add_option("--frames", o.frames, "Frames per operating point");
    ds->add_option("--seed", o.seed, "Generation seed");
    ds->add_option("--threads", o.threads, "Worker threads");
    ds->add_option("--out", o.out, "Output CSV path")->required();

    std::string data_file;
    std::string note;
    TrainOptions topts;
    auto* tr = app.add_subcommand("train", "Train the logistic confidence model on a dataset CSV");
    tr->add_option("--data", data_file, "Dataset CSV path")->required();
    tr->add_option("--lr", topts.lr, "Learning rate");
    tr->add_option("--epochs", topts.epochs, "Training epochs");
    tr->add_option("--batch", topts.batch, "Mini-batch size");
    tr->add_option("--seed", o.seed, "Shuffle seed");
    tr->add_option("--note", note, "Free-text description stored in the model file");
    tr->add_option("--out", o.out, "Output model JSON path")->required();

    auto* cf = app.add_subcommand("confusion", "Evaluate a model's confusion matrix on a dataset CSV");
    cf->add_option("--model", o.model_file, "Model JSON path")->required();
    cf->add_option("--data", data_file, "Dataset CSV path")->required();

    TuneConfig tc;
    bool fix_alpha_beta = false;
    uint64_t eval_seed = 1;
    auto* tn = app.add_subcommand("tune", "Random-search decoder parameters at one operating point");
    tn->add_option("--code", o.code, "Component code name");
    tn->add_option("--variant", o.variant, "Variant whose parameters are searched");
    tn->add_option("--ebn0", o.ebn0, "Objective Eb/N0, dB")->required()->expected(1);
    tn->add_option("--frames", o.frames, "Maximum frames per evaluation");
    tn->add_option("--fe-target", o.fe_target, "Frame-error stop per evaluation");
    tn->add_option("--params", o.params_file, "Starting parameter file (alpha/beta kept with --fix-alpha-beta)");
    tn->add_option("--model", o.model_file, "Confidence model JSON file (nn_assisted)");
    tn->add_option("--trials", tc.trials, "Search budget");
    tn->add_option("--seed", tc.search_seed, "Search seed");
    tn->add_option("--eval-seed", eval_seed, "Frame seed used by every evaluation");
    tn->add_option("--threads", o.threads, "Worker threads");
    tn->add_flag("--fix-alpha-beta", fix_alpha_beta, "Keep alpha/beta from --params; sample only gamma/t2");
    tn->add_option("--alpha-min", tc.alpha_min, "Alpha lower bound");
    tn->add_option("--alpha-max", tc.alpha_max, "Alpha upper bound");
    tn->add_option("--beta-min", tc.beta_min, "Beta lower bound");
    tn->add_option("--beta-max", tc.beta_max, "Beta upper bound");
    tn->add_option("--gamma-min", tc.gamma_min, "Gamma lower bound");
    tn->add_option("--gamma-max", tc.gamma_max, "Gamma upper bound");
    tn->add_option("--t2-min", tc.t2_min, "T2 lower bound");
    tn->add_option("--t2-max", tc.t2_max, "T2 upper bound");
    tn->add_option("--out", o.out, "Output parameter JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed() || swp->parsed()) {
        const DecoderParams p = resolve_params(o);
        ConfidenceModel model;
        const ConfidenceModel* mp = nullptr;
        if (p.variant == Variant::nn_assisted) {
            if (o.model_file.empty()) throw std::invalid_argument("nn_assisted requires --model");
            model = load_model(o.model_file);
            mp = &model;
        }
        const SimConfig cfg = make_sim_config(o, p, mp);
        emit_results(sweep(cfg, o.ebn0), o);
    } else if (ds->parsed()) {
        const ComponentCode code = ComponentCode::by_name(o.code);
        DecoderParams p = resolve_params(o);
        DatasetOptions dopts;
        dopts.ebn0_db = o.ebn0;
        dopts.frames_per_point = o.frames;
        dopts.seed = o.seed;
        dopts.threads = o.threads;
        const auto samples = generate_dataset(code, p, dopts);
        save_dataset_csv(samples, o.out);
        std::cout << "wrote " << samples.size() << " balanced samples to " << o.out << "\n";
    } else if (tr->parsed()) {
        const auto samples = load_dataset_csv(data_file);
        topts.seed = o.seed;
        ConfidenceModel model = train_model(samples, topts);
        model.dataset_info = note.empty() ? data_file : note;
        save_model(model, o.out);
        const auto m = confusion(model, samples);
        std::printf("trained on %zu samples; final BCE %.6f\n", samples.size(), bce_loss(model, samples));
        std::printf("confusion (columns: erroneous, correct):\n");
        std::printf("  flagged      %.4f  %.4f\n", m[0][0], m[0][1]);
        std::printf("  not flagged  %.4f  %.4f\n", m[1][0], m[1][1]);
    } else if (cf->parsed()) {
        const ConfidenceModel model = load_model(o.model_file);
        const auto samples = load_dataset_csv(data_file);
        const auto m = confusion(model, samples);
        std::printf("confusion (columns: erroneous, correct):\n");
        std::printf("  flagged      %.4f  %.4f\n", m[0][0], m[0][1]);
        std::printf("  not flagged  %.4f  %.4f\n", m[1][0], m[1][1]);
    } else if (tn->parsed()) {
        const DecoderParams p = resolve_params(o);
        ConfidenceModel model;
        const ConfidenceModel* mp = nullptr;
        if (p.variant == Variant::nn_assisted) {
            if (o.model_file.empty()) throw std::invalid_argument("nn_assisted requires --model");
            model = load_model(o.model_file);
            mp = &model;
        }
        CommonOpts eo = o;
        eo.seed = eval_seed;
        tc.eval = make_sim_config(eo, p, mp);
        tc.eval.ebn0_db = o.ebn0.front();
        tc.tune_alpha_beta = !fix_alpha_beta;
        const TuneResult res = tune_random_search(tc);
        save_params(res.best_params, o.out);
        std::printf("best trial %d of %d: ber %.6g fer %.6g (%llu frames, %llu fe)\n", res.best_trial, tc.trials,
                    res.best_eval.ber, res.best_eval.fer, static_cast<unsigned long long>(res.best_eval.frames),
                    static_cast<unsigned long long>(res.best_eval.frame_errors));
        std::printf("wrote %s\n", o.out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
