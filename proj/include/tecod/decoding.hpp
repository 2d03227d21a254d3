#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tecod/channel.hpp"
#include "tecod/constellation.hpp"
#include "tecod/repmat.hpp"
#include "tecod/system_config.hpp"

namespace tecod {

/// Inputs to the decoding metric for one received block. `ssd_verified`
/// must be set from the symbolic Gram check before the per-symbol decoders
/// will run; they refuse to decode suboptimally on non-separable designs.
struct MetricContext {
    const RepresentationMatrixSet* matrices = nullptr;
    const Constellation* constellation = nullptr;
    const SystemConfig* config = nullptr;
    std::vector<std::complex<double>> received;    // y
    std::vector<std::complex<double>> equivalent;  // per-relay |h| g
    double cov_scale = 1.0;                        // rho, noise covariance scale
    double amplitude = 1.0;                        // sqrt(p1 p2 N T / relay_power)
    bool ssd_verified = false;
};

/// Decoding metric for one candidate payload:
/// (-2 Re(c g^H X^H y) + c^2 g^H X^H X g) / rho, minimized by the ML block.
double ml_metric(const MetricContext& ctx, std::span<const std::complex<double>> symbols);

/// Exhaustive argmin over all |M|^k payloads; ties go to the
/// lexicographically smallest label tuple. Guarded to 10^6 candidates.
std::vector<int> brute_force_ml(const MetricContext& ctx);

/// Metric with symbol `index` set to `candidate` and all other data
/// symbols set to zero. The full metric telescopes over these terms.
double per_symbol_metric(const MetricContext& ctx, std::size_t index,
                         std::complex<double> candidate);

/// Independent per-symbol argmin; exact ML for separable designs.
/// Cost is k * |M| metric evaluations instead of |M|^k.
std::vector<int> ssd_decode(const MetricContext& ctx);

/// Per-axis argmin for rectangular constellations: real and imaginary
/// parts decode independently, k * (re levels + im levels) evaluations.
std::vector<int> real_symbol_decode(const MetricContext& ctx);

/// Pairwise codeword difference report. For training-embedded designs
/// every difference Gram is diagonal; full diversity means its smallest
/// diagonal entry stays positive over all pairs.
struct DiversityReport {
    std::size_t codewords = 0;
    std::size_t pairs = 0;
    double max_offdiag = 0.0;   // largest |off-diagonal| over all pair Grams
    double min_diag = 0.0;      // smallest diagonal entry over all pairs
    std::size_t min_rank = 0;   // smallest diagonal rank over all pairs
    bool zeros_at_train = true; // differences vanish exactly on training slots
    bool full_diversity = false;
};

DiversityReport diversity_check(const LinearDesign& design, const Constellation& constellation,
                                const SystemConfig& config);

}  // namespace tecod
