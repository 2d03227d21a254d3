#include "tecod/system_config.hpp"

#include <cmath>
#include <stdexcept>

namespace tecod {

SystemConfig build_config(const LinearDesign& design, double p_total, PowerPolicy policy) {
    const std::size_t T = design.rows();
    const std::size_t k = design.num_vars();
    if (T == k)
        throw std::invalid_argument(
            "design '" + design.name() +
            "' has no training slots (T == k); in-band training needs T > k");
    if (p_total <= 0.0) throw std::invalid_argument("total power must be positive");
    if (policy.phase1_fraction <= 0.0 || policy.phase1_fraction >= 1.0)
        throw std::invalid_argument("phase-1 power fraction must lie in (0, 1)");

    SystemConfig cfg;
    cfg.num_relays = design.cols();
    cfg.block_len = T;
    cfg.num_vars = k;
    cfg.num_train = (T - k + 1) / 2;  // ceil((T-k)/2)
    cfg.phase1_len = cfg.num_train + k;

    // Equal per-entry energy: every phase-1 slot carries 1/N, so the
    // normalization num_train*|a|^2 + k*E_s = 1 holds exactly.
    const double per_entry = 1.0 / static_cast<double>(cfg.phase1_len);
    cfg.symbol_energy = per_entry;
    cfg.training = {std::sqrt(per_entry), 0.0};

    cfg.p_total = p_total;
    cfg.p1 = policy.phase1_fraction * p_total;
    cfg.p2 = (1.0 - policy.phase1_fraction) * p_total / static_cast<double>(cfg.num_relays);
    return cfg;
}

InfoVector encode_bits(const std::vector<int>& bits, const Constellation& constellation,
                       const SystemConfig& config) {
    const std::size_t expected =
        config.num_vars * static_cast<std::size_t>(constellation.bits_per_symbol);
    if (bits.size() != expected)
        throw std::invalid_argument("bit string length " + std::to_string(bits.size()) +
                                    " does not match " + std::to_string(expected));

    InfoVector info;
    info.symbols.assign(config.num_train, config.training);
    info.labels.reserve(config.num_vars);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < config.num_vars; ++s) {
        int label = 0;
        for (int b = 0; b < constellation.bits_per_symbol; ++b) {
            const int bit = bits[pos++];
            if (bit != 0 && bit != 1) throw std::invalid_argument("bits must be 0 or 1");
            label = (label << 1) | bit;
        }
        info.labels.push_back(label);
        info.symbols.push_back(constellation.points[static_cast<std::size_t>(label)]);
    }
    return info;
}

std::vector<int> labels_to_bits(const std::vector<int>& labels, int bits_per_symbol) {
    std::vector<int> bits;
    bits.reserve(labels.size() * static_cast<std::size_t>(bits_per_symbol));
    for (const int label : labels)
        for (int b = bits_per_symbol - 1; b >= 0; --b) bits.push_back((label >> b) & 1);
    return bits;
}

}  // namespace tecod
