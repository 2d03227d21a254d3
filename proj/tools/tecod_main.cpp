// Command line front end: design verification, rate tables, Monte Carlo
// error-rate sweeps, diversity enumeration, and a verbose single-trial
// trace. Exit codes: 0 success, 1 verification/simulation failure, 2 usage.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tecod/decoding.hpp"
#include "tecod/rates.hpp"
#include "tecod/simulate.hpp"

using namespace tecod;
using cplx = std::complex<double>;

namespace {

std::string fmt(cplx v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.6f%+.6fi", v.real(), v.imag());
    return buf;
}

std::string fmt_vec(const std::vector<cplx>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += fmt(v[i]);
        if (i + 1 < v.size()) out += ", ";
    }
    return out + "]";
}

std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = 0.0, step = 0.0, stop = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw CLI::ValidationError("--snr", "expected start:step:stop with positive step");
        for (double v = start; v <= stop + 1e-9; v += step) values.push_back(v);
    } else {
        std::istringstream in(text);
        std::string token;
        while (std::getline(in, token, ',')) values.push_back(std::stod(token));
    }
    if (values.empty()) throw CLI::ValidationError("--snr", "no points given");
    return values;
}

PowerPolicy parse_power_split(const std::string& text) {
    if (text == "half") return {0.5};
    constexpr std::string_view prefix = "frac:";
    if (text.rfind(prefix, 0) == 0) {
        const double f = std::stod(text.substr(prefix.size()));
        return {f};
    }
    throw CLI::ValidationError("--power-split", "expected 'half' or 'frac:<phase1 fraction>'");
}

PhaseMode parse_phase(const std::string& text) {
    if (text == "genie") return PhaseMode::Genie;
    if (text == "estimated") return PhaseMode::Estimated;
    throw CLI::ValidationError("--phase", "expected 'genie' or 'estimated'");
}

DecoderKind parse_decoder(const std::string& text) {
    if (text == "per-symbol") return DecoderKind::PerSymbol;
    if (text == "real-symbol") return DecoderKind::RealSymbol;
    if (text == "exhaustive") return DecoderKind::Exhaustive;
    throw CLI::ValidationError("--decoder", "expected per-symbol, real-symbol, or exhaustive");
}

int cmd_verify(const std::string& design_spec, bool dump_gram, bool dump_matrices) {
    const LinearDesign design = load_design(design_spec);
    std::printf("design: %s (%zux%zu, %zu variables)\n", design.name().c_str(), design.rows(),
                design.cols(), design.num_vars());

    const DesignClass cls = classify(design);
    bool ok = true;

    if (design.has_train_entries() || !design.has_zero_entries()) {
        std::printf("class: %s\n", cls.te_cod ? "training-embedded orthogonal design"
                                              : "not a training-embedded orthogonal design");
        ok = ok && cls.te_cod;
        if (cls.te_cod) {
            const CodReport stripped = verify_cod(strip_training(design));
            std::printf("gram check with training set to zero: %s\n",
                        stripped.ok ? "ok" : "FAILED");
            ok = ok && stripped.ok;
        }
    } else {
        const CodReport report = verify_cod(design);
        std::printf("class: %s\n",
                    report.ok ? "orthogonal design" : "not an orthogonal design");
        ok = ok && report.ok;
        for (const GramIssue& issue : report.issues)
            std::printf("  gram[%zu][%zu] = %s (expected %s)\n", issue.row, issue.col,
                        issue.value.str().c_str(), issue.expected.c_str());
    }

    const bool separable = ssd_structure_ok(design);
    std::printf("separable decoding structure: %s\n", separable ? "ok" : "FAILED");

    LinearDesign embedded = design.has_zero_entries() && cls.cod ? te_embed(design) : design;
    if (classify(embedded).te_cod) {
        const auto set = extract_rep_matrices(embedded);
        bool identity = true;
        for (const auto& pair : set.pairs) identity = identity && partitions_identity(pair);
        std::printf("relay matrix identity A.A^T + B.B^T = I: %s (%zu relays)\n",
                    identity ? "ok" : "FAILED", set.pairs.size());
        ok = ok && identity;
        if (dump_matrices) {
            for (std::size_t j = 0; j < set.pairs.size(); ++j) {
                std::printf("relay %zu\n A =\n%s B =\n%s", j + 1,
                            set.pairs[j].a.str().c_str(), set.pairs[j].b.str().c_str());
            }
        }
    }

    if (dump_gram) {
        const auto gram = symbolic_gram(design);
        std::printf("symbolic Gram X^H X:\n");
        for (std::size_t p = 0; p < gram.size(); ++p)
            for (std::size_t q = 0; q < gram.size(); ++q)
                std::printf("  [%zu][%zu] = %s\n", p, q, gram[p][q].str().c_str());
    }

    std::printf("verification %s\n", ok ? "passed" : "FAILED");
    return ok ? 0 : 1;
}

int cmd_rates(std::string range, int square_a, const std::string& nonsquare,
              const std::string& overall) {
    if (range.empty() && square_a == 0 && nonsquare.empty() && overall.empty())
        range = "4..10";  // no selector: print the whole table
    if (!range.empty()) {
        int lo = 0, hi = 0;
        char dot1 = 0, dot2 = 0;
        std::istringstream in(range);
        if (!(in >> lo)) throw CLI::ValidationError("--k", "expected K or K1..K2");
        if (in >> dot1 >> dot2 >> hi) {
            if (dot1 != '.' || dot2 != '.') throw CLI::ValidationError("--k", "expected K1..K2");
        } else {
            hi = lo;
        }
        for (const RateRow& row : rate_table(lo, hi)) {
            const char* cmp = row.versus_third > 0 ? ">" : row.versus_third < 0 ? "<" : "=";
            std::printf("K=%-2d  m=%lld T=%-3lld  rate %-7s %s 1/3\n", row.relays,
                        static_cast<long long>(row.m), static_cast<long long>(row.delay),
                        row.printed().c_str(), cmp);
        }
    }
    if (square_a > 0)
        std::printf("square design a=%d (%d relays): overall rate %s\n", square_a, 1 << square_a,
                    square_rate(square_a).str().c_str());
    if (!nonsquare.empty()) {
        long long m = 0, t = 0;
        char comma = 0;
        std::istringstream in(nonsquare);
        if (!(in >> m >> comma >> t) || comma != ',')
            throw CLI::ValidationError("--nonsquare", "expected m,T");
        std::printf("non-square design m=%lld, T=%lld: overall rate %s\n", m, t,
                    nonsquare_rate(m, t).str().c_str());
    }
    if (!overall.empty()) {
        long long t = 0, k = 0;
        char comma = 0;
        std::istringstream in(overall);
        if (!(in >> t >> comma >> k) || comma != ',')
            throw CLI::ValidationError("--overall", "expected T,k");
        std::printf("T=%lld, k=%lld: overall rate %s\n", t, k, overall_rate(t, k).str().c_str());
    }
    return 0;
}

int cmd_simulate(const std::string& design_spec, const std::string& constellation,
                 const std::string& snr, const SweepOptions& options, const std::string& out_json,
                 const std::string& out_csv) {
    const LinearDesign design = load_design(design_spec);
    const std::vector<double> grid = parse_snr_list(snr);
    const SweepResult result = run_ber_sweep(design, constellation, grid, options);

    for (const BerPoint& p : result.points)
        std::fprintf(stderr, "snr %6.2f dB  trials %8llu  errors %8llu  ber %.4e\n", p.snr_db,
                     static_cast<unsigned long long>(p.trials),
                     static_cast<unsigned long long>(p.bit_errors), p.ber);

    const std::string json = to_json(result);
    if (out_json.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        std::ofstream f(out_json);
        if (!f) {
            std::fprintf(stderr, "cannot write %s\n", out_json.c_str());
            return 1;
        }
        f << json;
    }
    if (!out_csv.empty()) {
        std::ofstream f(out_csv);
        if (!f) {
            std::fprintf(stderr, "cannot write %s\n", out_csv.c_str());
            return 1;
        }
        f << to_csv(result);
    }
    return 0;
}

int cmd_diversity(const std::string& design_spec, const std::string& constellation_name) {
    LinearDesign design = load_design(design_spec);
    if (design.has_zero_entries()) design = te_embed(design);
    const SystemConfig cfg = build_config(design, 10.0);
    const Constellation set = make_constellation(constellation_name, cfg.symbol_energy);
    const DiversityReport report = diversity_check(design, set, cfg);

    std::printf("design: %s, constellation: %s\n", design.name().c_str(), set.name.c_str());
    std::printf("codewords: %zu, pairs: %zu\n", report.codewords, report.pairs);
    std::printf("max |off-diagonal| over pair Grams: %.3e\n", report.max_offdiag);
    std::printf("min diagonal entry: %.6g\n", report.min_diag);
    std::printf("min diagonal rank: %zu of %zu\n", report.min_rank, design.cols());
    std::printf("differences vanish on training slots: %s\n",
                report.zeros_at_train ? "yes" : "NO");
    std::printf("full diversity: %s\n", report.full_diversity ? "yes" : "NO");
    return report.full_diversity ? 0 : 1;
}

int cmd_decode_demo(const std::string& design_spec, const std::string& constellation,
                    double snr_db, std::uint64_t seed, PhaseMode phase, bool no_noise) {
    const LinearDesign design = load_design(design_spec);
    const double p_total = std::pow(10.0, snr_db / 10.0);
    const SimChain chain = make_chain(design, constellation, p_total, {0.5}, phase,
                                      DecoderKind::PerSymbol, !no_noise, !no_noise);

    TrialRng rng(derive_seed(seed, 0, 0));
    TrialRecord trace;
    std::vector<int> decoded;
    const std::uint64_t errors = run_trial(chain, rng, &trace, &decoded);

    std::printf("design %s, %s, snr %.2f dB (P1 %.3f, P2 %.3f), seed %llu\n",
                chain.design.name().c_str(), chain.constellation.name.c_str(), snr_db,
                chain.config.p1, chain.config.p2, static_cast<unsigned long long>(seed));
    std::printf("payload labels: ");
    for (int l : trace.info.labels)
        std::printf("%d(%s) ", l, chain.constellation.bit_label(l).c_str());
    std::printf("\nphase-1 vector x     = %s\n", fmt_vec(trace.info.symbols).c_str());
    std::printf("source->relay fades  = %s\n", fmt_vec(trace.channel.source_relay).c_str());
    std::printf("relay->dest fades    = %s\n", fmt_vec(trace.channel.relay_dest).c_str());
    for (std::size_t j = 0; j < trace.relay_received.size(); ++j) {
        std::printf("relay %zu received    = %s\n", j + 1, fmt_vec(trace.relay_received[j]).c_str());
        std::printf("relay %zu phase used  = %+.6f rad\n", j + 1, trace.relay_phase[j]);
        std::printf("relay %zu expanded    = %s\n", j + 1,
                    fmt_vec(trace.relay_concatenated[j]).c_str());
        std::printf("relay %zu transmitted = %s\n", j + 1, fmt_vec(trace.relay_sent[j]).c_str());
    }
    std::printf("destination y        = %s\n", fmt_vec(trace.received).c_str());
    std::printf("noise scale rho      = %.6f\n", trace.cov_scale);

    MetricContext ctx;
    ctx.matrices = &chain.matrices;
    ctx.constellation = &chain.constellation;
    ctx.config = &chain.config;
    ctx.received = trace.received;
    ctx.equivalent = trace.channel.equivalent;
    ctx.cov_scale = trace.cov_scale;
    ctx.amplitude = destination_amplitude(chain.config, chain.relay_power);
    ctx.ssd_verified = true;

    std::printf("per-symbol metrics:\n");
    for (std::size_t i = 0; i < chain.config.num_vars; ++i) {
        std::printf("  x%zu: ", i + 1);
        for (std::size_t l = 0; l < chain.constellation.size(); ++l)
            std::printf("%s%.4f", l == 0 ? "" : "  ",
                        per_symbol_metric(ctx, i, chain.constellation.points[l]));
        std::printf("\n");
    }

    std::printf("decoded labels:      ");
    for (int l : decoded) std::printf("%d(%s) ", l, chain.constellation.bit_label(l).c_str());
    std::printf("\nbit errors: %llu\n", static_cast<unsigned long long>(errors));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"training-embedded orthogonal designs for amplify-and-forward relay networks"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "check design structure and relay matrices");
    std::string verify_design;
    bool dump_gram = false;
    bool dump_matrices = false;
    verify->add_option("--design", verify_design, "design file or catalog:<name>")->required();
    verify->add_flag("--gram", dump_gram, "dump the symbolic Gram");
    verify->add_flag("--matrices", dump_matrices, "dump the relay matrix pairs");

    // rates
    auto* rates = app.add_subcommand("rates", "overall rate calculators");
    std::string rates_range, rates_nonsquare, rates_overall;
    int rates_square = 0;
    rates->add_option("--k", rates_range, "table rows, e.g. 4..10 or 5");
    rates->add_option("--square-a", rates_square, "square design parameter a");
    rates->add_option("--nonsquare", rates_nonsquare, "non-square design as m,T");
    rates->add_option("--overall", rates_overall, "generic design as T,k");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo bit error rate sweep");
    std::string sim_design, sim_constellation = "4qam", sim_snr = "0:5:30";
    std::string sim_out, sim_csv, sim_split = "half", sim_phase = "genie",
                sim_decoder = "per-symbol";
    SweepOptions options;
    bool no_noise = false, no_p1_noise = false, no_p2_noise = false;
    simulate->add_option("--design", sim_design, "design file or catalog:<name>")->required();
    simulate->add_option("--constellation", sim_constellation, "signal set name");
    simulate->add_option("--snr", sim_snr, "start:step:stop in dB, or comma list");
    simulate->add_option("--trials", options.trials, "max trials per point");
    simulate->add_option("--seed", options.master_seed, "master seed");
    simulate->add_option("--power-split", sim_split, "half or frac:<phase1 fraction>");
    simulate->add_option("--phase", sim_phase, "genie or estimated");
    simulate->add_option("--decoder", sim_decoder, "per-symbol, real-symbol, or exhaustive");
    simulate->add_option("--target-errors", options.target_errors,
                         "stop a point early after this many bit errors");
    simulate->add_option("--batch", options.batch_size, "early-stop check granularity");
    simulate->add_flag("--exact-trials", options.exact_trials, "disable early stopping");
    simulate->add_option("--threads", options.threads, "worker threads (0 = hardware)");
    simulate->add_flag("--no-noise", no_noise, "disable all noise (loopback check)");
    simulate->add_flag("--no-phase1-noise", no_p1_noise, "disable relay-side noise");
    simulate->add_flag("--no-phase2-noise", no_p2_noise, "disable destination noise");
    simulate->add_option("--out", sim_out, "JSON output path (default stdout)");
    simulate->add_option("--csv", sim_csv, "CSV output path");

    // diversity
    auto* diversity = app.add_subcommand("diversity", "pairwise codeword difference report");
    std::string div_design, div_constellation = "4qam";
    diversity->add_option("--design", div_design, "design file or catalog:<name>")->required();
    diversity->add_option("--constellation", div_constellation, "signal set name");

    // decode-demo
    auto* demo = app.add_subcommand("decode-demo", "verbose single-trial trace");
    std::string demo_design, demo_constellation = "4qam", demo_phase = "genie";
    double demo_snr = 20.0;
    std::uint64_t demo_seed = 1;
    bool demo_no_noise = false;
    demo->add_option("--design", demo_design, "design file or catalog:<name>")->required();
    demo->add_option("--constellation", demo_constellation, "signal set name");
    demo->add_option("--snr-db", demo_snr, "total power in dB");
    demo->add_option("--seed", demo_seed, "trial seed");
    demo->add_option("--phase", demo_phase, "genie or estimated");
    demo->add_flag("--no-noise", demo_no_noise, "disable noise in both phases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(verify_design, dump_gram, dump_matrices);
        if (*rates) return cmd_rates(rates_range, rates_square, rates_nonsquare, rates_overall);
        if (*simulate) {
            options.phase1_fraction = parse_power_split(sim_split).phase1_fraction;
            options.phase = parse_phase(sim_phase);
            options.decoder = parse_decoder(sim_decoder);
            if (no_noise) no_p1_noise = no_p2_noise = true;
            options.phase1_noise = !no_p1_noise;
            options.phase2_noise = !no_p2_noise;
            return cmd_simulate(sim_design, sim_constellation, sim_snr, options, sim_out, sim_csv);
        }
        if (*diversity) return cmd_diversity(div_design, div_constellation);
        if (*demo)
            return cmd_decode_demo(demo_design, demo_constellation, demo_snr, demo_seed,
                                   parse_phase(demo_phase), demo_no_noise);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const DesignParseError& e) {
        std::fprintf(stderr, "design error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
