#include "tecod/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace tecod {

ChannelRealization draw_channels(TrialRng& rng, std::size_t num_relays) {
    ChannelRealization ch;
    ch.source_relay.reserve(num_relays);
    ch.relay_dest.reserve(num_relays);
    ch.equivalent.reserve(num_relays);
    for (std::size_t i = 0; i < num_relays; ++i) ch.source_relay.push_back(rng.cscg());
    for (std::size_t i = 0; i < num_relays; ++i) ch.relay_dest.push_back(rng.cscg());
    for (std::size_t i = 0; i < num_relays; ++i)
        ch.equivalent.push_back(std::abs(ch.source_relay[i]) * ch.relay_dest[i]);
    return ch;
}

std::vector<std::complex<double>> phase1_receive(const InfoVector& info,
                                                 std::complex<double> fade,
                                                 const SystemConfig& config, TrialRng& rng,
                                                 bool with_noise) {
    const double gain = std::sqrt(config.p1 * static_cast<double>(config.phase1_len));
    std::vector<std::complex<double>> out(info.symbols.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = gain * fade * info.symbols[i];
        if (with_noise) out[i] += rng.cscg();
    }
    return out;
}

std::vector<std::complex<double>> relay_concatenate(std::span<const std::complex<double>> received,
                                                    double fade_phase,
                                                    const SystemConfig& config) {
    if (received.size() != config.phase1_len)
        throw std::invalid_argument("relay input length does not match phase-1 length");

    const std::size_t mirrored = (config.block_len - config.num_vars) / 2;  // floor((T-k)/2)
    const double training_phase = std::arg(config.training);
    const std::complex<double> undo_fade = std::polar(1.0, -fade_phase);
    const std::complex<double> mirror_rotation =
        std::polar(1.0, 2.0 * (training_phase + fade_phase));

    std::vector<std::complex<double>> out;
    out.reserve(mirrored + received.size());
    for (std::size_t j = 0; j < mirrored; ++j)
        out.push_back(undo_fade * mirror_rotation * std::conj(received[j]));
    for (const auto& r : received) out.push_back(undo_fade * r);
    return out;
}

double estimate_phase(std::span<const std::complex<double>> received,
                      const SystemConfig& config) {
    if (config.num_train == 0)
        throw std::invalid_argument("phase estimation needs at least one training slot");
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < config.num_train; ++j) acc += received[j];
    return std::arg(acc * std::conj(config.training));
}

double relay_vector_power(const SystemConfig& config) {
    const double symbol_part =
        static_cast<double>(config.block_len - config.num_vars) * std::norm(config.training) +
        static_cast<double>(config.num_vars) * config.symbol_energy;
    return config.p1 * static_cast<double>(config.phase1_len) * symbol_part +
           static_cast<double>(config.block_len);
}

std::vector<std::complex<double>> relay_transmit(std::span<const std::complex<double>> concatenated,
                                                 const RelayMatrixPair& pair,
                                                 const SystemConfig& config, double relay_power) {
    if (concatenated.size() != config.block_len)
        throw std::invalid_argument("relay vector length does not match block length");
    const double gain =
        std::sqrt(config.p2 * static_cast<double>(config.block_len) / relay_power);
    auto direct = pair.a.times(concatenated);
    const auto conjugated = pair.b.times_conj(concatenated);
    for (std::size_t i = 0; i < direct.size(); ++i) direct[i] = gain * (direct[i] + conjugated[i]);
    return direct;
}

std::vector<std::complex<double>> destination_receive(
    const std::vector<std::vector<std::complex<double>>>& transmissions,
    std::span<const std::complex<double>> relay_dest, TrialRng& rng, bool with_noise) {
    if (transmissions.empty()) throw std::invalid_argument("no relay transmissions");
    std::vector<std::complex<double>> y(transmissions.front().size(), {0.0, 0.0});
    for (std::size_t j = 0; j < transmissions.size(); ++j)
        for (std::size_t t = 0; t < y.size(); ++t) y[t] += relay_dest[j] * transmissions[j][t];
    if (with_noise)
        for (auto& v : y) v += rng.cscg();
    return y;
}

double noise_cov_scale(std::span<const std::complex<double>> relay_dest,
                       const SystemConfig& config, double relay_power) {
    double gain_sum = 0.0;
    for (const auto& g : relay_dest) gain_sum += std::norm(g);
    return 1.0 + config.p2 * static_cast<double>(config.block_len) / relay_power * gain_sum;
}

ComplexMatrix noise_cov_full(const RepresentationMatrixSet& matrices,
                             std::span<const std::complex<double>> relay_dest,
                             const SystemConfig& config, double relay_power) {
    const std::size_t T = matrices.block_len;
    ComplexMatrix cov = ComplexMatrix::identity(T);
    const double scale = config.p2 * static_cast<double>(config.block_len) / relay_power;
    for (std::size_t j = 0; j < matrices.pairs.size(); ++j) {
        const double weight = scale * std::norm(relay_dest[j]);
        const IntMatrix& a = matrices.pairs[j].a;
        const IntMatrix& b = matrices.pairs[j].b;
        for (std::size_t r1 = 0; r1 < T; ++r1)
            for (std::size_t r2 = 0; r2 < T; ++r2) {
                int sum = 0;
                for (std::size_t c = 0; c < T; ++c)
                    sum += a.at(r1, c) * a.at(r2, c) + b.at(r1, c) * b.at(r2, c);
                cov(r1, r2) += weight * static_cast<double>(sum);
            }
    }
    return cov;
}

double destination_amplitude(const SystemConfig& config, double relay_power) {
    return std::sqrt(config.p1 * config.p2 * static_cast<double>(config.phase1_len) *
                     static_cast<double>(config.block_len) / relay_power);
}

}  // namespace tecod
