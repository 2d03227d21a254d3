#include "tecod/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace tecod {

SimChain make_chain(const LinearDesign& design, const std::string& constellation_name,
                    double p_total, PowerPolicy policy, PhaseMode phase, DecoderKind decoder,
                    bool phase1_noise, bool phase2_noise) {
    LinearDesign embedded = design.has_zero_entries() ? te_embed(design) : design;
    if (!classify(embedded).te_cod)
        throw std::invalid_argument("design '" + design.name() +
                                    "' is not usable as a training-embedded design");
    if (!ssd_structure_ok(embedded))
        throw std::invalid_argument("design '" + design.name() +
                                    "' has a non-separable Gram; per-symbol decoding would be "
                                    "suboptimal");

    SystemConfig config = build_config(embedded, p_total, policy);
    Constellation constellation = make_constellation(constellation_name, config.symbol_energy);
    if (decoder == DecoderKind::RealSymbol && !constellation.rectangular)
        throw std::invalid_argument("real/imaginary split decoding needs a rectangular "
                                    "constellation; '" + constellation_name + "' is not");
    // Trials draw the payload from a single 64-bit word.
    if (config.num_vars * static_cast<std::size_t>(constellation.bits_per_symbol) > 64)
        throw std::invalid_argument("payload exceeds 64 bits per trial");

    SimChain chain{std::move(embedded), {}, std::move(constellation), config,
                   0.0, phase, decoder, phase1_noise, phase2_noise};
    chain.matrices = extract_rep_matrices(chain.design);
    chain.relay_power = relay_vector_power(config);
    return chain;
}

std::uint64_t run_trial(const SimChain& chain, TrialRng& rng, TrialRecord* trace,
                        std::vector<int>* decoded_labels) {
    const SystemConfig& cfg = chain.config;
    const int bits_per_symbol = chain.constellation.bits_per_symbol;

    // Fixed draw order: payload word, fades, then noise in chain order.
    const std::uint64_t word = rng.bits();
    std::vector<int> bits(cfg.num_vars * static_cast<std::size_t>(bits_per_symbol));
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = static_cast<int>((word >> i) & 1u);

    const InfoVector info = encode_bits(bits, chain.constellation, cfg);
    const ChannelRealization channel = draw_channels(rng, cfg.num_relays);

    std::vector<std::vector<std::complex<double>>> sent;
    sent.reserve(cfg.num_relays);
    std::vector<std::vector<std::complex<double>>> received_at_relays;
    std::vector<std::vector<std::complex<double>>> concatenated_at_relays;
    std::vector<double> phases_used;

    for (std::size_t j = 0; j < cfg.num_relays; ++j) {
        const auto r = phase1_receive(info, channel.source_relay[j], cfg, rng, chain.phase1_noise);
        const double phase = chain.phase == PhaseMode::Genie
                                 ? std::arg(channel.source_relay[j])
                                 : estimate_phase(r, cfg);
        auto concatenated = relay_concatenate(r, phase, cfg);
        sent.push_back(relay_transmit(concatenated, chain.matrices.pairs[j], cfg,
                                      chain.relay_power));
        if (trace) {
            received_at_relays.push_back(r);
            concatenated_at_relays.push_back(std::move(concatenated));
            phases_used.push_back(phase);
        }
    }

    auto y = destination_receive(sent, channel.relay_dest, rng, chain.phase2_noise);

    MetricContext ctx;
    ctx.matrices = &chain.matrices;
    ctx.constellation = &chain.constellation;
    ctx.config = &cfg;
    ctx.received = std::move(y);
    ctx.equivalent = channel.equivalent;
    ctx.cov_scale = noise_cov_scale(channel.relay_dest, cfg, chain.relay_power);
    ctx.amplitude = destination_amplitude(cfg, chain.relay_power);
    ctx.ssd_verified = true;  // established once in make_chain

    std::vector<int> labels;
    switch (chain.decoder) {
        case DecoderKind::PerSymbol:
            labels = ssd_decode(ctx);
            break;
        case DecoderKind::RealSymbol:
            labels = real_symbol_decode(ctx);
            break;
        case DecoderKind::Exhaustive:
            labels = brute_force_ml(ctx);
            break;
    }

    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        errors += static_cast<std::uint64_t>(
            std::popcount(static_cast<unsigned>(labels[i] ^ info.labels[i])));

    if (trace) {
        trace->info = info;
        trace->channel = channel;
        trace->relay_received = std::move(received_at_relays);
        trace->relay_phase = std::move(phases_used);
        trace->relay_concatenated = std::move(concatenated_at_relays);
        trace->relay_sent = std::move(sent);
        trace->received = ctx.received;
        trace->cov_scale = ctx.cov_scale;
    }
    if (decoded_labels) *decoded_labels = std::move(labels);
    return errors;
}

namespace {

std::uint64_t run_range(const SimChain& chain, std::uint64_t master, std::uint64_t point,
                        std::uint64_t begin, std::uint64_t end) {
    std::uint64_t errors = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
        TrialRng rng(derive_seed(master, point, t));
        errors += run_trial(chain, rng);
    }
    return errors;
}

}  // namespace

SweepResult run_ber_sweep(const LinearDesign& design, const std::string& constellation_name,
                          const std::vector<double>& snr_db, const SweepOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("sweep needs at least one trial");
    if (options.batch_size < 1) throw std::invalid_argument("batch size must be positive");

    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = options.threads == 0 ? hardware : options.threads;

    SweepResult result;
    result.options = options;
    result.constellation_name = constellation_name;
    result.points.reserve(snr_db.size());

    for (std::size_t point = 0; point < snr_db.size(); ++point) {
        const double p_total = std::pow(10.0, snr_db[point] / 10.0);
        const SimChain chain =
            make_chain(design, constellation_name, p_total, {options.phase1_fraction},
                       options.phase, options.decoder, options.phase1_noise,
                       options.phase2_noise);
        if (point == 0) {
            result.design_name = chain.design.name();
            result.num_relays = chain.config.num_relays;
            result.block_len = chain.config.block_len;
            result.num_vars = chain.config.num_vars;
            result.phase1_len = chain.config.phase1_len;
            result.num_train = chain.config.num_train;
            result.bits_per_symbol = chain.constellation.bits_per_symbol;
        }

        const std::uint64_t bits_per_trial =
            chain.config.num_vars * static_cast<std::uint64_t>(chain.constellation.bits_per_symbol);

        std::uint64_t done = 0;
        std::uint64_t errors = 0;
        while (done < options.trials) {
            const std::uint64_t batch_end = std::min(options.trials, done + options.batch_size);
            const std::uint64_t batch = batch_end - done;
            if (workers <= 1 || batch < 2 * workers) {
                errors += run_range(chain, options.master_seed, point, done, batch_end);
            } else {
                std::vector<std::future<std::uint64_t>> futures;
                futures.reserve(workers);
                const std::uint64_t chunk = (batch + workers - 1) / workers;
                for (unsigned w = 0; w < workers; ++w) {
                    const std::uint64_t begin = done + w * chunk;
                    const std::uint64_t end = std::min(batch_end, begin + chunk);
                    if (begin >= end) break;
                    futures.push_back(std::async(std::launch::async, run_range, std::cref(chain),
                                                 options.master_seed, point, begin, end));
                }
                for (auto& f : futures) errors += f.get();
            }
            done = batch_end;
            if (!options.exact_trials && errors >= options.target_errors) break;
        }

        BerPoint bp;
        bp.snr_db = snr_db[point];
        const double energy_per_bit =
            (static_cast<double>(chain.config.phase1_len) * chain.config.p1 +
             static_cast<double>(chain.config.block_len * chain.config.num_relays) *
                 chain.config.p2) /
            static_cast<double>(bits_per_trial);
        bp.energy_per_bit_db = 10.0 * std::log10(energy_per_bit);
        bp.trials = done;
        bp.bit_errors = errors;
        bp.ber = static_cast<double>(errors) / static_cast<double>(done * bits_per_trial);
        std::tie(bp.wilson_lo, bp.wilson_hi) = wilson_interval(errors, done * bits_per_trial);
        bp.seed = options.master_seed;
        result.points.push_back(bp);
    }
    return result;
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t total) {
    if (total == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double estimate_diversity_slope(const BerPoint& a, const BerPoint& b) {
    if (a.ber <= 0.0 || b.ber <= 0.0)
        throw std::invalid_argument("slope estimate needs positive error rates at both points");
    if (a.snr_db == b.snr_db)
        throw std::invalid_argument("slope estimate needs distinct SNR points");
    return -(std::log10(b.ber) - std::log10(a.ber)) / ((b.snr_db - a.snr_db) / 10.0);
}

double diversity_slope_lower_bound(const BerPoint& a, const BerPoint& b) {
    if (a.snr_db == b.snr_db)
        throw std::invalid_argument("slope bound needs distinct SNR points");
    const BerPoint& low = a.snr_db < b.snr_db ? a : b;
    const BerPoint& high = a.snr_db < b.snr_db ? b : a;
    if (low.wilson_lo <= 0.0)
        throw std::invalid_argument("slope bound needs the reference interval above zero");
    return -(std::log10(high.wilson_hi) - std::log10(low.wilson_lo)) /
           ((high.snr_db - low.snr_db) / 10.0);
}

namespace {

const char* phase_name(PhaseMode mode) {
    return mode == PhaseMode::Genie ? "genie" : "estimated";
}

const char* decoder_name(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::PerSymbol:
            return "per-symbol";
        case DecoderKind::RealSymbol:
            return "real-symbol";
        case DecoderKind::Exhaustive:
            return "exhaustive";
    }
    return "?";
}

}  // namespace

std::string to_json(const SweepResult& result) {
    nlohmann::ordered_json doc;
    doc["config"] = {
        {"design", result.design_name},
        {"constellation", result.constellation_name},
        {"relays", result.num_relays},
        {"block_len", result.block_len},
        {"symbols", result.num_vars},
        {"phase1_len", result.phase1_len},
        {"train_slots", result.num_train},
        {"bits_per_symbol", result.bits_per_symbol},
        {"phase1_fraction", result.options.phase1_fraction},
        {"phase", phase_name(result.options.phase)},
        {"decoder", decoder_name(result.options.decoder)},
        {"phase1_noise", result.options.phase1_noise},
        {"phase2_noise", result.options.phase2_noise},
    };
    doc["run"] = {
        {"tool", "tecod"},
        {"seed", result.options.master_seed},
        {"trials_requested", result.options.trials},
        {"target_errors", result.options.target_errors},
        {"batch_size", result.options.batch_size},
        {"exact_trials", result.options.exact_trials},
    };
    doc["points"] = nlohmann::ordered_json::array();
    for (const BerPoint& p : result.points) {
        doc["points"].push_back({
            {"snr_db", p.snr_db},
            {"energy_per_bit_db", p.energy_per_bit_db},
            {"trials", p.trials},
            {"bit_errors", p.bit_errors},
            {"ber", p.ber},
            {"wilson_95", {p.wilson_lo, p.wilson_hi}},
            {"seed", p.seed},
        });
    }
    return doc.dump(2) + "\n";
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "snr_db,energy_per_bit_db,trials,bit_errors,ber,wilson_lo,wilson_hi\n";
    for (const BerPoint& p : result.points)
        out << p.snr_db << ',' << p.energy_per_bit_db << ',' << p.trials << ',' << p.bit_errors
            << ',' << p.ber << ',' << p.wilson_lo << ',' << p.wilson_hi << "\n";
    return out.str();
}

}  // namespace tecod
