#include <doctest.h>

#include <cmath>
#include <tuple>

#include "tecod/simulate.hpp"

using namespace tecod;

namespace {

SweepOptions quick_options(std::uint64_t trials, std::uint64_t seed) {
    SweepOptions opt;
    opt.trials = trials;
    opt.master_seed = seed;
    opt.exact_trials = true;
    opt.threads = 1;
    return opt;
}

}  // namespace

TEST_CASE("noise-free sweeps never miss") {
    SweepOptions opt = quick_options(200, 9);
    opt.phase1_noise = false;
    opt.phase2_noise = false;
    const auto result =
        run_ber_sweep(catalog_design("cod4-paper"), "4qam", {0.0, 10.0, 20.0}, opt);
    for (const BerPoint& p : result.points) {
        CHECK(p.bit_errors == 0);
        CHECK(p.ber == 0.0);
        CHECK(p.trials == 200);
    }
}

TEST_CASE("identical seeds give byte-identical output") {
    const SweepOptions opt = quick_options(400, 31337);
    const auto a = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {0.0, 12.0}, opt);
    const auto b = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {0.0, 12.0}, opt);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_csv(a) == to_csv(b));
}

TEST_CASE("worker count does not change the result") {
    SweepOptions serial = quick_options(600, 555);
    SweepOptions parallel = serial;
    parallel.threads = 4;
    const auto a = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {6.0, 18.0}, serial);
    const auto b = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {6.0, 18.0}, parallel);
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("early stop lands on batch boundaries deterministically") {
    SweepOptions opt;
    opt.trials = 100000;
    opt.master_seed = 2;
    opt.target_errors = 100;
    opt.batch_size = 250;
    opt.threads = 1;
    const auto a = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {0.0}, opt);
    REQUIRE(a.points.size() == 1);
    CHECK(a.points[0].bit_errors >= 100);
    CHECK(a.points[0].trials % 250 == 0);
    CHECK(a.points[0].trials < 100000);

    SweepOptions threaded = opt;
    threaded.threads = 3;
    const auto b = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {0.0}, threaded);
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("error rate falls with power") {
    SweepOptions opt = quick_options(3000, 99);
    const auto result =
        run_ber_sweep(catalog_design("cod4-paper"), "4qam", {0.0, 10.0, 20.0}, opt);
    REQUIRE(result.points.size() == 3);
    CHECK(result.points[0].ber > result.points[1].ber);
    CHECK(result.points[1].ber > result.points[2].ber);
    // Sanity on the interval: the estimate sits inside it.
    for (const auto& p : result.points) {
        CHECK(p.wilson_lo <= p.ber);
        CHECK(p.ber <= p.wilson_hi);
    }
}

TEST_CASE("plain orthogonal designs are embedded before simulation") {
    const SweepOptions opt = quick_options(100, 4);
    const auto result = run_ber_sweep(catalog_design("cod4-recursive"), "4qam", {10.0}, opt);
    CHECK(result.num_train == 1);
    CHECK(result.points[0].trials == 100);
}

TEST_CASE("designs without training slots cannot be simulated") {
    CHECK_THROWS_AS(run_ber_sweep(catalog_design("alamouti"), "4qam", {10.0}, quick_options(10, 1)),
                    std::invalid_argument);
}

TEST_CASE("axis-split sweeps reject non-rectangular sets") {
    SweepOptions opt = quick_options(10, 1);
    opt.decoder = DecoderKind::RealSymbol;
    CHECK_THROWS_AS(run_ber_sweep(catalog_design("cod4-paper"), "8qam-paper", {10.0}, opt),
                    std::invalid_argument);
    CHECK_NOTHROW(run_ber_sweep(catalog_design("cod4-paper"), "8qam-rect", {10.0}, opt));
}

TEST_CASE("non-square and eight-relay chains decode cleanly end to end") {
    // cod43 has three relays; cod8 mirrors two conjugated training slots
    // inside every trial. Both must be error free without noise and agree
    // with the exhaustive oracle with it.
    for (const char* name : {"cod43", "cod8"}) {
        const LinearDesign design = catalog_design(name);

        SimChain silent = make_chain(design, "4qam", 30.0, {0.5}, PhaseMode::Genie,
                                     DecoderKind::PerSymbol, false, false);
        for (std::uint64_t t = 0; t < 25; ++t) {
            TrialRng rng(derive_seed(91, 0, t));
            CHECK(run_trial(silent, rng) == 0);
        }

        SimChain noisy = make_chain(design, "4qam", 30.0, {0.5}, PhaseMode::Genie,
                                    DecoderKind::PerSymbol, true, true);
        for (std::uint64_t t = 0; t < 150; ++t) {
            TrialRng rng(derive_seed(92, 0, t));
            TrialRecord trace;
            run_trial(noisy, rng, &trace);
            MetricContext ctx;
            ctx.matrices = &noisy.matrices;
            ctx.constellation = &noisy.constellation;
            ctx.config = &noisy.config;
            ctx.received = trace.received;
            ctx.equivalent = trace.channel.equivalent;
            ctx.cov_scale = trace.cov_scale;
            ctx.amplitude = destination_amplitude(noisy.config, noisy.relay_power);
            ctx.ssd_verified = true;
            CHECK(ssd_decode(ctx) == brute_force_ml(ctx));
        }
    }
}

TEST_CASE("oracle equivalence holds under estimated phase") {
    // With noisy phase estimates the relay processing deviates from the
    // assumed model, but the decoding metric is unchanged, so the
    // per-symbol decoder must still track the exhaustive search exactly.
    const SimChain chain = make_chain(catalog_design("cod4-paper"), "4qam", 10.0, {0.5},
                                      PhaseMode::Estimated, DecoderKind::PerSymbol, true, true);
    for (std::uint64_t t = 0; t < 300; ++t) {
        TrialRng rng(derive_seed(93, 0, t));
        TrialRecord trace;
        run_trial(chain, rng, &trace);
        MetricContext ctx;
        ctx.matrices = &chain.matrices;
        ctx.constellation = &chain.constellation;
        ctx.config = &chain.config;
        ctx.received = trace.received;
        ctx.equivalent = trace.channel.equivalent;
        ctx.cov_scale = trace.cov_scale;
        ctx.amplitude = destination_amplitude(chain.config, chain.relay_power);
        ctx.ssd_verified = true;
        CHECK(ssd_decode(ctx) == brute_force_ml(ctx));
    }
}

TEST_CASE("genie and estimated phase agree when phase-1 noise is off") {
    const auto build = [](PhaseMode mode) {
        return make_chain(catalog_design("cod4-paper"), "4qam", 20.0, {0.5}, mode,
                          DecoderKind::PerSymbol, false, true);
    };
    const SimChain genie = build(PhaseMode::Genie);
    const SimChain estimated = build(PhaseMode::Estimated);
    for (std::uint64_t t = 0; t < 300; ++t) {
        TrialRng rng_a(derive_seed(64, 0, t));
        TrialRng rng_b(derive_seed(64, 0, t));
        std::vector<int> labels_a, labels_b;
        run_trial(genie, rng_a, nullptr, &labels_a);
        run_trial(estimated, rng_b, nullptr, &labels_b);
        CHECK(labels_a == labels_b);
    }
}

TEST_CASE("estimated phase tracks genie closely at high power in noise") {
    // With phase-1 noise on, the two modes may differ on single trials but
    // the error rates must stay close at high power.
    SweepOptions genie = quick_options(4000, 777);
    SweepOptions estimated = genie;
    estimated.phase = PhaseMode::Estimated;
    const auto a = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {18.0}, genie);
    const auto b = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {18.0}, estimated);
    CHECK(b.points[0].ber <= a.points[0].ber * 3.0 + 0.01);
}

TEST_CASE("trace captures every intermediate vector") {
    const SimChain chain = make_chain(catalog_design("cod4-paper"), "4qam", 20.0, {0.5},
                                      PhaseMode::Genie, DecoderKind::PerSymbol, true, true);
    TrialRng rng(1);
    TrialRecord trace;
    run_trial(chain, rng, &trace);
    CHECK(trace.info.symbols.size() == 4);
    CHECK(trace.channel.source_relay.size() == 4);
    CHECK(trace.relay_received.size() == 4);
    CHECK(trace.relay_received[0].size() == 4);
    CHECK(trace.relay_concatenated[0].size() == 4);
    CHECK(trace.relay_sent[0].size() == 4);
    CHECK(trace.received.size() == 4);
    CHECK(trace.cov_scale > 1.0);
    CHECK(trace.relay_phase.size() == 4);
}

TEST_CASE("wilson interval reference values") {
    // Frozen from the closed form evaluated independently.
    const auto [lo0, hi0] = wilson_interval(0, 1000);
    CHECK(lo0 <= 1e-15);
    CHECK(hi0 == doctest::Approx(0.0038267584855551).epsilon(1e-9));

    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.4038315303659956).epsilon(1e-9));
    CHECK(hi == doctest::Approx(0.5961684696340044).epsilon(1e-9));

    const auto [lo1, hi1] = wilson_interval(0, 0);
    CHECK(lo1 == 0.0);
    CHECK(hi1 == 1.0);
}

TEST_CASE("diversity slope arithmetic") {
    BerPoint a, b;
    a.snr_db = 20.0;
    a.ber = 1e-2;
    b.snr_db = 30.0;
    b.ber = 1e-4;
    CHECK(estimate_diversity_slope(a, b) == doctest::Approx(2.0).epsilon(1e-12));

    b.ber = 1e-2;
    CHECK(estimate_diversity_slope(a, b) == doctest::Approx(0.0));

    b.ber = 0.0;
    CHECK_THROWS_AS(estimate_diversity_slope(a, b), std::invalid_argument);
    b.ber = 1e-3;
    b.snr_db = 20.0;
    CHECK_THROWS_AS(estimate_diversity_slope(a, b), std::invalid_argument);
}

TEST_CASE("slope floor when the top point is error free") {
    // 100 errors out of 1e6 bits at 20 dB, none out of 1e6 at 30 dB.
    BerPoint low, high;
    low.snr_db = 20.0;
    low.bit_errors = 100;
    low.ber = 1e-4;
    std::tie(low.wilson_lo, low.wilson_hi) = wilson_interval(100, 1000000);
    high.snr_db = 30.0;
    high.ber = 0.0;
    std::tie(high.wilson_lo, high.wilson_hi) = wilson_interval(0, 1000000);

    const double floor = diversity_slope_lower_bound(low, high);
    CHECK(floor > 0.0);
    // The bound must be conservative: any true curve consistent with the
    // intervals is at least this steep.
    CHECK(floor < std::log10(low.ber / (high.wilson_hi)) / 1.0 + 1e-9);
    CHECK(floor == doctest::Approx(-(std::log10(high.wilson_hi) - std::log10(low.wilson_lo))));

    BerPoint no_info = low;
    no_info.wilson_lo = 0.0;
    CHECK_THROWS_AS(diversity_slope_lower_bound(no_info, high), std::invalid_argument);
}

TEST_CASE("result serialization carries the schema") {
    const SweepOptions opt = quick_options(50, 12);
    const auto result = run_ber_sweep(catalog_design("cod4-paper"), "4qam", {5.0}, opt);
    const std::string json = to_json(result);
    for (const char* key : {"\"config\"", "\"run\"", "\"points\"", "\"snr_db\"",
                            "\"energy_per_bit_db\"", "\"wilson_95\"", "\"seed\"", "\"ber\""})
        CHECK(json.find(key) != std::string::npos);
    const std::string csv = to_csv(result);
    CHECK(csv.find("snr_db,energy_per_bit_db,trials,bit_errors,ber,wilson_lo,wilson_hi") == 0);
}
