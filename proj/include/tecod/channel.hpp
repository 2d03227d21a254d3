#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tecod/matrix.hpp"
#include "tecod/repmat.hpp"
#include "tecod/rng.hpp"
#include "tecod/system_config.hpp"

namespace tecod {

/// Fades for one trial: source->relay h, relay->destination g, and the
/// equivalent channel seen by the destination after relay-side phase
/// compensation, entrywise |h| * g.
struct ChannelRealization {
    std::vector<std::complex<double>> source_relay;
    std::vector<std::complex<double>> relay_dest;
    std::vector<std::complex<double>> equivalent;
};

/// i.i.d. CSCG(0,1) fades for every hop.
ChannelRealization draw_channels(TrialRng& rng, std::size_t num_relays);

/// Phase-1 reception at one relay: sqrt(p1 * N) * h * x plus unit CSCG
/// noise per entry (noise optional for algebraic tests).
std::vector<std::complex<double>> phase1_receive(const InfoVector& info,
                                                 std::complex<double> fade,
                                                 const SystemConfig& config, TrialRng& rng,
                                                 bool with_noise = true);

/// Expands the N received entries to the block length T: the first
/// floor((T-k)/2) entries reappear conjugated and rotated so that, in the
/// noiseless case, the result is sqrt(p1*N)*|h| times the expanded symbol
/// vector. The compensation rotation keeps the noise white.
std::vector<std::complex<double>> relay_concatenate(std::span<const std::complex<double>> received,
                                                    double fade_phase,
                                                    const SystemConfig& config);

/// Phase estimate from the training prefix: arg(sum of the first num_train
/// entries times conj(training)). Consistent as p1 grows.
double estimate_phase(std::span<const std::complex<double>> received, const SystemConfig& config);

/// Mean squared norm of a concatenated relay vector, in closed form:
/// p1 * N * ((T-k)|a|^2 + k E_s) + T.
double relay_vector_power(const SystemConfig& config);

/// Relay transmission: sqrt(p2 * T / relay_power) * (A r + B conj(r)).
std::vector<std::complex<double>> relay_transmit(std::span<const std::complex<double>> concatenated,
                                                 const RelayMatrixPair& pair,
                                                 const SystemConfig& config, double relay_power);

/// Destination superposition y = sum_j g_j t_j plus unit CSCG noise.
std::vector<std::complex<double>> destination_receive(
    const std::vector<std::vector<std::complex<double>>>& transmissions,
    std::span<const std::complex<double>> relay_dest, TrialRng& rng, bool with_noise = true);

/// Scalar rho with aggregate noise covariance rho * I; holds whenever every
/// relay pair satisfies the identity partition.
double noise_cov_scale(std::span<const std::complex<double>> relay_dest,
                       const SystemConfig& config, double relay_power);

/// Full covariance of the aggregate noise for arbitrary matrix pairs
/// (diagnostic; equals noise_cov_scale * I for valid designs).
ComplexMatrix noise_cov_full(const RepresentationMatrixSet& matrices,
                             std::span<const std::complex<double>> relay_dest,
                             const SystemConfig& config, double relay_power);

/// Amplitude of the signal part at the destination,
/// sqrt(p1 * p2 * N * T / relay_power).
double destination_amplitude(const SystemConfig& config, double relay_power);

/// Everything produced in one end-to-end trial, for tracing and tests.
struct TrialRecord {
    InfoVector info;
    ChannelRealization channel;
    std::vector<std::vector<std::complex<double>>> relay_received;      // per relay, length N
    std::vector<double> relay_phase;                                    // compensation used
    std::vector<std::vector<std::complex<double>>> relay_concatenated;  // per relay, length T
    std::vector<std::vector<std::complex<double>>> relay_sent;          // per relay, length T
    std::vector<std::complex<double>> received;                         // y, length T
    double cov_scale = 0.0;                                             // rho
};

}  // namespace tecod
