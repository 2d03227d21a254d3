#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tecod/channel.hpp"
#include "tecod/decoding.hpp"
#include "tecod/design.hpp"
#include "tecod/rng.hpp"

namespace tecod {

/// Phase knowledge at the relays: exact (the model assumption) or taken
/// from the training prefix.
enum class PhaseMode { Genie, Estimated };

enum class DecoderKind { PerSymbol, RealSymbol, Exhaustive };

struct SweepOptions {
    std::uint64_t trials = 10000;
    std::uint64_t master_seed = 1;
    PhaseMode phase = PhaseMode::Genie;
    DecoderKind decoder = DecoderKind::PerSymbol;
    double phase1_fraction = 0.5;
    bool phase1_noise = true;
    bool phase2_noise = true;
    /// Points stop early once a whole batch boundary accumulates this many
    /// bit errors, unless exact_trials forces the full count. Stops happen
    /// only at batch boundaries so results never depend on thread count.
    std::uint64_t target_errors = 500;
    std::uint64_t batch_size = 1000;
    bool exact_trials = false;
    unsigned threads = 0;  // 0 picks hardware concurrency
};

/// Aggregated result for one SNR point. snr_db is total power in dB over
/// unit noise; energy_per_bit_db additionally accounts for both phases.
struct BerPoint {
    double snr_db = 0.0;
    double energy_per_bit_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::string design_name;
    std::string constellation_name;
    std::size_t num_relays = 0;
    std::size_t block_len = 0;
    std::size_t num_vars = 0;
    std::size_t phase1_len = 0;
    std::size_t num_train = 0;
    int bits_per_symbol = 0;
    SweepOptions options;
    std::vector<BerPoint> points;
};

/// Fixed per-power-level context shared by all trials of one point.
struct SimChain {
    LinearDesign design;  // the training-embedded design actually simulated
    RepresentationMatrixSet matrices;
    Constellation constellation;
    SystemConfig config;
    double relay_power = 0.0;
    PhaseMode phase = PhaseMode::Genie;
    DecoderKind decoder = DecoderKind::PerSymbol;
    bool phase1_noise = true;
    bool phase2_noise = true;
};

/// Builds the simulation context. A plain orthogonal design is embedded
/// first; the separable-Gram structure is verified here, once.
SimChain make_chain(const LinearDesign& design, const std::string& constellation_name,
                    double p_total, PowerPolicy policy, PhaseMode phase, DecoderKind decoder,
                    bool phase1_noise = true, bool phase2_noise = true);

/// Runs one end-to-end trial and returns the number of bit errors.
/// Optionally records every intermediate vector.
std::uint64_t run_trial(const SimChain& chain, TrialRng& rng, TrialRecord* trace = nullptr,
                        std::vector<int>* decoded_labels = nullptr);

/// Monte Carlo sweep over SNR points. Deterministic for a fixed master
/// seed: trial t of point p always uses the stream derive_seed(seed, p, t).
SweepResult run_ber_sweep(const LinearDesign& design, const std::string& constellation_name,
                          const std::vector<double>& snr_db, const SweepOptions& options);

/// 95% Wilson score interval for `errors` out of `total` Bernoulli draws.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t total);

/// Diversity-order estimate from two points:
/// -(log10 ber2 - log10 ber1) / ((snr2 - snr1)/10). Both BERs must be
/// positive and the SNRs distinct.
double estimate_diversity_slope(const BerPoint& a, const BerPoint& b);

/// Conservative slope floor when the high-SNR point saw no errors: the
/// zero estimate is replaced by its Wilson upper bound and the reference
/// by its lower bound. Throws when the reference interval touches zero.
double diversity_slope_lower_bound(const BerPoint& a, const BerPoint& b);

std::string to_json(const SweepResult& result);
std::string to_csv(const SweepResult& result);

}  // namespace tecod
