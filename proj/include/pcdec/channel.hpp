#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcdec/mat.hpp"
#include "pcdec/rng.hpp"

namespace pcdec {

/// Binary-input AWGN channel at a fixed operating point.
/// sigma = sqrt(1 / (2 * R * 10^(ebn0_db/10))).
struct ChannelSpec {
    double ebn0_db = 0.0;
    double rate = 1.0;
    double sigma = 0.0;
    uint64_t seed = 0;
};

/// BPSK mapping 1 - 2x, elementwise.
double bipolar(uint8_t bit);
std::vector<double> bipolar_map(std::span<const uint8_t> bits);
SoftMatrix bipolar_map(const BitMatrix& bits);

/// Hard decision (1 - sign(x)) / 2 with sign(0) := +1, so 0 maps to bit 0.
uint8_t hard_bit(double v);
std::vector<uint8_t> hard_decision(std::span<const double> values);
BitMatrix hard_decision(const SoftMatrix& values);

/// Eb/N0 (dB) to noise standard deviation for BPSK at code rate R.
double ebn0_to_sigma(double ebn0_db, double rate);

/// Es/N0 = Eb/N0 + 10 log10(R).
double ebn0_to_esn0(double ebn0_db, double rate);

ChannelSpec make_channel(double ebn0_db, double rate, uint64_t seed);

/// Y = mu(B) + N with N ~ iid Gaussian(0, sigma^2). The noise stream is
/// fully determined by (spec.seed, frame_index), so frames can be produced
/// concurrently and reproduce bit-exactly.
SoftMatrix transmit(const BitMatrix& codeword, const ChannelSpec& spec, uint64_t frame_index = 0);

/// Same stream, vector shape; used by component-level experiments.
std::vector<double> transmit_vector(std::span<const uint8_t> bits, const ChannelSpec& spec, uint64_t frame_index = 0);

/// Uniform k x k message bits drawn from the given stream.
BitMatrix random_message(int k, SplitMix64& rng);

}  // namespace pcdec
