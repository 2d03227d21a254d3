#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tecod/constellation.hpp"
#include "tecod/design.hpp"

namespace tecod {

/// How the total power budget splits between the phases. Phase 1 gets
/// fraction * total per channel use; the remainder is shared equally by
/// the relays.
struct PowerPolicy {
    double phase1_fraction = 0.5;
};

/// Dimensions and powers for one end-to-end configuration. Invariants:
/// phase1_len = ceil((block_len - num_vars)/2) + num_vars, and
/// num_train * |training|^2 + num_vars * symbol_energy = 1, which makes the
/// expected energy of a phase-1 vector exactly one.
struct SystemConfig {
    std::size_t num_relays = 0;   // K
    std::size_t block_len = 0;    // T, phase-2 channel uses
    std::size_t num_vars = 0;     // k
    std::size_t phase1_len = 0;   // N
    std::size_t num_train = 0;    // ceil((T-k)/2)
    std::complex<double> training;  // the constant sent in the training slots
    double symbol_energy = 0.0;   // E_s per data symbol
    double p1 = 0.0;              // source power per channel use
    double p2 = 0.0;              // relay power per channel use
    double p_total = 0.0;
};

/// Equal per-entry energy split: |training|^2 = symbol_energy = 1/N, with a
/// real positive training constant. Rejects designs without training slots
/// (block_len == num_vars), which cannot carry in-band training.
SystemConfig build_config(const LinearDesign& design, double p_total, PowerPolicy policy = {});

/// One encoded source block: the phase-1 vector [training x num_train,
/// payload symbols], plus the payload labels it encodes.
struct InfoVector {
    std::vector<std::complex<double>> symbols;  // length phase1_len
    std::vector<int> labels;                    // num_vars constellation labels

    std::span<const std::complex<double>> payload(std::size_t num_train) const {
        return {symbols.data() + num_train, symbols.size() - num_train};
    }
};

/// Gray-maps bits (most significant bit first, num_vars groups) onto
/// constellation points and prepends the training prefix.
InfoVector encode_bits(const std::vector<int>& bits, const Constellation& constellation,
                       const SystemConfig& config);

/// Label list -> bit list, inverse of the grouping in encode_bits.
std::vector<int> labels_to_bits(const std::vector<int>& labels, int bits_per_symbol);

}  // namespace tecod
