#include "tecod/decoding.hpp"

#include <cmath>
#include <stdexcept>

namespace tecod {

namespace {

double candidate_count(std::size_t alphabet, std::size_t symbols) {
    return std::pow(static_cast<double>(alphabet), static_cast<double>(symbols));
}

void check_context(const MetricContext& ctx) {
    if (!ctx.matrices || !ctx.constellation || !ctx.config)
        throw std::invalid_argument("metric context is incomplete");
    if (ctx.cov_scale <= 0.0 || ctx.amplitude <= 0.0)
        throw std::invalid_argument("metric context needs positive scale factors");
}

}  // namespace

double ml_metric(const MetricContext& ctx, std::span<const std::complex<double>> symbols) {
    const auto expanded =
        expanded_symbol_vector(ctx.config->training, symbols, ctx.matrices->num_train);

    // Column-by-column accumulation of X g without materializing X.
    std::vector<std::complex<double>> signal(ctx.matrices->block_len, {0.0, 0.0});
    for (std::size_t j = 0; j < ctx.matrices->pairs.size(); ++j) {
        const auto direct = ctx.matrices->pairs[j].a.times(expanded);
        const auto conjugated = ctx.matrices->pairs[j].b.times_conj(expanded);
        const std::complex<double> gain = ctx.equivalent[j];
        for (std::size_t t = 0; t < signal.size(); ++t)
            signal[t] += gain * (direct[t] + conjugated[t]);
    }

    std::complex<double> correlation = 0.0;
    double signal_energy = 0.0;
    for (std::size_t t = 0; t < signal.size(); ++t) {
        correlation += std::conj(signal[t]) * ctx.received[t];
        signal_energy += std::norm(signal[t]);
    }
    const double c = ctx.amplitude;
    return (-2.0 * c * correlation.real() + c * c * signal_energy) / ctx.cov_scale;
}

std::vector<int> brute_force_ml(const MetricContext& ctx) {
    check_context(ctx);
    const std::size_t alphabet = ctx.constellation->size();
    const std::size_t k = ctx.config->num_vars;
    if (candidate_count(alphabet, k) > 1e6)
        throw std::invalid_argument("exhaustive search guarded to 10^6 candidates");

    std::vector<int> labels(k, 0);
    std::vector<int> best_labels(k, 0);
    std::vector<std::complex<double>> symbols(k);
    double best = 0.0;
    bool first = true;

    // Lexicographic odometer; strict improvement keeps the smallest tuple
    // on ties.
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            symbols[i] = ctx.constellation->points[static_cast<std::size_t>(labels[i])];
        const double metric = ml_metric(ctx, symbols);
        if (first || metric < best) {
            best = metric;
            best_labels = labels;
            first = false;
        }
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++labels[pos] < static_cast<int>(alphabet)) break;
            labels[pos] = 0;
            if (pos == 0) return best_labels;
        }
    }
}

double per_symbol_metric(const MetricContext& ctx, std::size_t index,
                         std::complex<double> candidate) {
    std::vector<std::complex<double>> symbols(ctx.config->num_vars, {0.0, 0.0});
    symbols[index] = candidate;
    return ml_metric(ctx, symbols);
}

std::vector<int> ssd_decode(const MetricContext& ctx) {
    check_context(ctx);
    if (!ctx.ssd_verified)
        throw std::logic_error(
            "per-symbol decoding requested without a verified separable Gram structure");

    const std::size_t k = ctx.config->num_vars;
    std::vector<int> labels(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        double best = 0.0;
        int best_label = 0;
        for (std::size_t label = 0; label < ctx.constellation->size(); ++label) {
            const double metric = per_symbol_metric(ctx, i, ctx.constellation->points[label]);
            if (label == 0 || metric < best) {
                best = metric;
                best_label = static_cast<int>(label);
            }
        }
        labels[i] = best_label;
    }
    return labels;
}

std::vector<int> real_symbol_decode(const MetricContext& ctx) {
    check_context(ctx);
    if (!ctx.ssd_verified)
        throw std::logic_error(
            "per-symbol decoding requested without a verified separable Gram structure");
    const Constellation& set = *ctx.constellation;
    if (!set.rectangular)
        throw std::invalid_argument("real/imaginary split decoding needs a rectangular "
                                    "constellation; '" + set.name + "' is not");

    const std::size_t k = ctx.config->num_vars;
    std::vector<int> labels(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // The per-symbol metric separates over the two axes, so the other
        // axis can be pinned to any fixed level while scanning this one.
        int best_re = 0;
        double best = 0.0;
        for (std::size_t code = 0; code < set.re_levels.size(); ++code) {
            const std::complex<double> candidate{set.re_levels[code], set.im_levels[0]};
            const double metric = per_symbol_metric(ctx, i, candidate);
            if (code == 0 || metric < best) {
                best = metric;
                best_re = static_cast<int>(code);
            }
        }
        int best_im = 0;
        for (std::size_t code = 0; code < set.im_levels.size(); ++code) {
            const std::complex<double> candidate{set.re_levels[0], set.im_levels[code]};
            const double metric = per_symbol_metric(ctx, i, candidate);
            if (code == 0 || metric < best) {
                best = metric;
                best_im = static_cast<int>(code);
            }
        }
        labels[i] = (best_re << set.im_bits) | best_im;
    }
    return labels;
}

DiversityReport diversity_check(const LinearDesign& design, const Constellation& constellation,
                                const SystemConfig& config) {
    const std::size_t k = design.num_vars();
    const std::size_t alphabet = constellation.size();
    if (candidate_count(alphabet, k) > 1e4)
        throw std::invalid_argument("pair enumeration guarded to 10^4 codewords");

    const std::size_t total = static_cast<std::size_t>(candidate_count(alphabet, k));
    std::vector<ComplexMatrix> codewords;
    codewords.reserve(total);
    std::vector<std::complex<double>> symbols(k);
    for (std::size_t index = 0; index < total; ++index) {
        std::size_t rest = index;
        for (std::size_t i = k; i-- > 0;) {
            symbols[i] = constellation.points[rest % alphabet];
            rest /= alphabet;
        }
        codewords.push_back(design.evaluate(config.training, symbols));
    }

    DiversityReport report;
    report.codewords = total;
    report.min_rank = design.cols();
    bool first = true;
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t q = p + 1; q < total; ++q) {
            ++report.pairs;
            const ComplexMatrix diff = codewords[p] - codewords[q];

            for (std::size_t r = 0; r < design.rows(); ++r)
                for (std::size_t c = 0; c < design.cols(); ++c)
                    if (design.entry(r, c).kind == DesignEntry::Kind::Train &&
                        std::abs(diff(r, c)) != 0.0)
                        report.zeros_at_train = false;

            const ComplexMatrix gram = diff.hermitian() * diff;
            std::size_t rank = 0;
            for (std::size_t r = 0; r < gram.rows(); ++r) {
                for (std::size_t c = 0; c < gram.cols(); ++c) {
                    if (r == c) {
                        const double d = gram(r, c).real();
                        if (first || d < report.min_diag) report.min_diag = d;
                        if (d > 1e-12) ++rank;
                        first = false;
                    } else {
                        report.max_offdiag = std::max(report.max_offdiag, std::abs(gram(r, c)));
                    }
                }
            }
            report.min_rank = std::min(report.min_rank, rank);
        }
    }
    report.full_diversity =
        report.max_offdiag < 1e-12 && report.min_diag > 0.0 && report.min_rank == design.cols();
    return report;
}

}  // namespace tecod
