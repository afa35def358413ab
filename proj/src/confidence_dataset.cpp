#include <algorithm>
#include <stdexcept>

#include "pcdec/channel.hpp"
#include "pcdec/codec.hpp"
#include "pcdec/confidence.hpp"
#include "pcdec/pyndiah.hpp"
#include "pcdec/rng.hpp"

namespace pcdec {

std::vector<LabeledSample> generate_dataset(const ComponentCode& code, const DecoderParams& params_in,
                                            const DatasetOptions& opts) {
    if (opts.ebn0_db.empty()) throw std::invalid_argument("generate_dataset: no operating points");
    if (opts.frames_per_point < 1) throw std::invalid_argument("generate_dataset: frames_per_point must be >= 1");

    // Features are observed on an unmodified decoding pass: labels must not
    // depend on a confidence model that does not exist yet.
    DecoderParams params = params_in;
    params.variant = Variant::baseline;
    params.validate();

    const int n = code.n(), k = code.k();
    const double rate = (static_cast<double>(k) * k) / (static_cast<double>(n) * n);

    std::vector<LabeledSample> err, cor;
    for (size_t pi = 0; pi < opts.ebn0_db.size(); ++pi) {
        const uint64_t point_seed = mix_u64(opts.seed, pi);
        const ChannelSpec spec = make_channel(opts.ebn0_db[pi], rate, point_seed);
        for (uint64_t frame = 0; frame < opts.frames_per_point; ++frame) {
            auto msg_rng = substream(point_seed, Stream::message, frame);
            const BitMatrix cw = pc_encode(random_message(k, msg_rng), code);
            const SoftMatrix y = transmit(cw, spec, frame);

            DecodeIO io;
            io.sigma = spec.sigma;
            io.truth = &cw;
            io.observer = [&](const CandidateSet&, std::span<const double> fx, bool, bool erroneous) {
                if (fx.empty()) return;  // row without a decision: no label defined
                LabeledSample s;
                std::copy(fx.begin(), fx.end(), s.features.x.begin());
                s.label = erroneous ? 1 : 0;
                (erroneous ? err : cor).push_back(s);
            };
            decode_product(y, params, code, &io);
        }
    }

    if (err.empty())
        throw std::runtime_error("generate_dataset: no erroneous decisions observed; lower Eb/N0 or add frames");
    if (cor.empty())
        throw std::runtime_error("generate_dataset: no correct decisions observed; raise Eb/N0 or add frames");

    // Balance by downsampling the majority class, then interleave.
    auto& major = err.size() > cor.size() ? err : cor;
    const size_t keep = std::min(err.size(), cor.size());
    {
        auto rng = substream(opts.seed, Stream::balance, 0);
        shuffle_inplace(major, rng);
        major.resize(keep);
    }
    std::vector<LabeledSample> out;
    out.reserve(2 * keep);
    out.insert(out.end(), err.begin(), err.end());
    out.insert(out.end(), cor.begin(), cor.end());
    auto rng = substream(opts.seed, Stream::balance, 1);
    shuffle_inplace(out, rng);
    return out;
}

}  // namespace pcdec
