#include "pcdec/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "pcdec/rng.hpp"

namespace pcdec {

double bipolar(uint8_t bit) { return 1.0 - 2.0 * static_cast<double>(bit); }

std::vector<double> bipolar_map(std::span<const uint8_t> bits) {
    std::vector<double> out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) out[i] = bipolar(bits[i]);
    return out;
}

SoftMatrix bipolar_map(const BitMatrix& bits) {
    SoftMatrix out(bits.rows(), bits.cols());
    const auto src = bits.data();
    const auto dst = out.data();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = bipolar(src[i]);
    return out;
}

uint8_t hard_bit(double v) { return v < 0.0 ? 1 : 0; }

std::vector<uint8_t> hard_decision(std::span<const double> values) {
    std::vector<uint8_t> out(values.size());
    for (size_t i = 0; i < values.size(); ++i) out[i] = hard_bit(values[i]);
    return out;
}

BitMatrix hard_decision(const SoftMatrix& values) {
    BitMatrix out(values.rows(), values.cols());
    const auto src = values.data();
    const auto dst = out.data();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = hard_bit(src[i]);
    return out;
}

double ebn0_to_sigma(double ebn0_db, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("ebn0_to_sigma: rate must be positive");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

double ebn0_to_esn0(double ebn0_db, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("ebn0_to_esn0: rate must be positive");
    return ebn0_db + 10.0 * std::log10(rate);
}

ChannelSpec make_channel(double ebn0_db, double rate, uint64_t seed) {
    return ChannelSpec{ebn0_db, rate, ebn0_to_sigma(ebn0_db, rate), seed};
}

SoftMatrix transmit(const BitMatrix& codeword, const ChannelSpec& spec, uint64_t frame_index) {
    GaussianSource noise(substream(spec.seed, Stream::noise, frame_index));
    SoftMatrix y(codeword.rows(), codeword.cols());
    const auto src = codeword.data();
    const auto dst = y.data();
    for (size_t i = 0; i < src.size(); ++i) dst[i] = bipolar(src[i]) + spec.sigma * noise.next();
    return y;
}

std::vector<double> transmit_vector(std::span<const uint8_t> bits, const ChannelSpec& spec, uint64_t frame_index) {
    GaussianSource noise(substream(spec.seed, Stream::noise, frame_index));
    std::vector<double> y(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) y[i] = bipolar(bits[i]) + spec.sigma * noise.next();
    return y;
}

BitMatrix random_message(int k, SplitMix64& rng) {
    BitMatrix msg(k, k);
    const auto v = msg.data();
    uint64_t word = 0;
    int left = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (left == 0) {
            word = rng.next();
            left = 64;
        }
        v[i] = static_cast<uint8_t>(word & 1u);
        word >>= 1;
        --left;
    }
    return msg;
}

}  // namespace pcdec
