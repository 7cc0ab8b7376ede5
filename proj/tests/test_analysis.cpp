// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/analysis.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "z3ro/config.hpp"

using namespace z3ro;

TEST_CASE("closed-form gains match independent high-precision values") {
    CHECK(snr_closed_form_mrt(64, 1.0, 1.0, 1.0) == doctest::Approx(64.0));
    CHECK(10.0 * std::log10(snr_closed_form_mrt(64, 1.0, 1.0, 1.0)) ==
          doctest::Approx(18.061799739838872).epsilon(1e-12));
    const double z64 =
        10.0 * std::log10(snr_closed_form_z3ro_los(64, 1, 1.0, 1.0, 1.0));
    CHECK(std::abs(z64 - 16.453048026328388) < 1e-9);
    // Scaling in beta, p, sigma is multiplicative.
    CHECK(snr_closed_form_z3ro_los(64, 1, 2.0, 3.0, 4.0) ==
          doctest::Approx(snr_closed_form_z3ro_los(64, 1, 1.0, 1.0, 1.0) *
                          1.5));
    // Half-saturated boundary yields exactly zero.
    CHECK(snr_closed_form_z3ro_los(8, 4, 1.0, 1.0, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));

    CHECK_THROWS_AS(snr_closed_form_z3ro_los(8, 5, 1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(snr_closed_form_z3ro_los(8, 0, 1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(snr_closed_form_mrt(0, 1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(snr_closed_form_mrt(8, 1.0, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("linear amplification gives an exact gain and capped distortion") {
    const ChannelVector h = los_ula(16, 1.0, 0.6, 0.5);
    const Precoder w = mrt(h);
    const double p = 0.5, sigma = 2.0;
    const LinkMetrics lm = bussgang_metrics(h, w, IdealLinear{}, p, sigma,
                                            2000, derive_stream(3, "lin"));
    // r~ = (sum h w) s exactly, so the fit is exact and distortion vanishes.
    CHECK(lm.bussgang_gain_G.real() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(lm.bussgang_gain_G.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lm.signal_power == doctest::Approx(16.0 * p).epsilon(1e-10));
    CHECK(lm.distortion_below_floor);
    CHECK(lm.sdr == 1e20);
    CHECK(lm.noise_power == sigma);
    CHECK(lm.n_symbols == 2000);
    CHECK(lm.snr == doctest::Approx(16.0 * p / sigma).epsilon(1e-10));
    CHECK(1.0 / lm.sndr ==
          doctest::Approx(1.0 / lm.snr + 1.0 / lm.sdr).epsilon(1e-12));
}

TEST_CASE("saturated links keep the harmonic identity exact") {
    const ChannelVector h = los_ula(16, 1.0, 1.4, 0.5);
    const Precoder w = mrt(h);
    const double p = 1.0;
    const double p_pa = p / 16.0;
    const LinkMetrics lm =
        bussgang_metrics(h, w, Rapp{2.0, p_pa}, p, 1.0, 5000,
                         derive_stream(4, "sat"));
    CHECK(!lm.distortion_below_floor);
    CHECK(lm.distortion_power > 0.0);
    CHECK(lm.sdr == doctest::Approx(lm.signal_power / lm.distortion_power));
    CHECK(1.0 / lm.sndr ==
          doctest::Approx(1.0 / lm.snr + 1.0 / lm.sdr).epsilon(1e-12));
    CHECK(lm.sndr < lm.snr);
    CHECK(lm.sndr < lm.sdr);
}

TEST_CASE("metrics are reproducible per stream") {
    const ChannelVector h = los_ula(8, 1.0, 0.3, 0.5);
    const Precoder w = mrt(h);
    const LinkMetrics a = bussgang_metrics(h, w, Rapp{2.0, 0.1}, 1.0, 1.0,
                                           2000, derive_stream(5, "rep"));
    const LinkMetrics b = bussgang_metrics(h, w, Rapp{2.0, 0.1}, 1.0, 1.0,
                                           2000, derive_stream(5, "rep"));
    CHECK(a.bussgang_gain_G == b.bussgang_gain_G);
    CHECK(a.distortion_power == b.distortion_power);
    CHECK(a.sndr == b.sndr);
    const LinkMetrics c = bussgang_metrics(h, w, Rapp{2.0, 0.1}, 1.0, 1.0,
                                           2000, derive_stream(6, "rep"));
    CHECK(a.distortion_power != c.distortion_power);
}

TEST_CASE("bussgang metrics validate their inputs") {
    const ChannelVector h = los_ula(4, 1.0, 0.0, 0.5);
    const Precoder w = mrt(h);
    RngStream s = derive_stream(1, "v");
    CHECK_THROWS_AS(bussgang_metrics(h, w, IdealLinear{}, 1.0, 1.0, 999, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(bussgang_metrics(h, w, IdealLinear{}, 0.0, 1.0, 2000, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(bussgang_metrics(h, w, IdealLinear{}, 1.0, 0.0, 2000, s),
                    std::invalid_argument);
}

TEST_CASE("distortion nulling wins once the amplifier saturates") {
    const ChannelVector h = los_ula(16, 1.0, 80.0 * std::numbers::pi / 180.0,
                                    0.5);
    const double p = db_to_linear({20.0}) / 16.0;
    const double p_pa = p / 16.0; // 0 dB back-off
    const Precoder wm = mrt(h);
    const Precoder wz = z3ro_heuristic(h, {0, 1});
    const LinkMetrics lm = bussgang_metrics(h, wm, Rapp{2.0, p_pa}, p, 1.0,
                                            20000, derive_stream(7, "m"));
    const LinkMetrics lz = bussgang_metrics(h, wz, Rapp{2.0, p_pa}, p, 1.0,
                                            20000, derive_stream(7, "z"));
    CHECK(lz.sdr > lm.sdr);
    CHECK(lz.sndr > lm.sndr);
}

TEST_CASE("two-antenna pattern matches hand numbers") {
    Precoder w;
    w.w = {cxd{1.0 / std::sqrt(2.0), 0.0}, cxd{1.0 / std::sqrt(2.0), 0.0}};
    const double p = 0.4;
    const cxd a3{-0.05, 0.0};
    const std::vector<double> grid = {-std::numbers::pi / 2.0,
                                      std::numbers::pi / 2.0};
    const auto samples = radiation_pattern(w, a3, p, 0.5, grid);
    REQUIRE(samples.size() == 2);
    // Broadside: all phases zero, coherent sums.
    CHECK(samples[1].linear_power == doctest::Approx(0.8).epsilon(1e-12));
    const double dist_scale = 0.0025 * 6.0 * 0.4 * 0.4 * 0.4;
    CHECK(samples[1].distortion_power ==
          doctest::Approx(dist_scale * 0.5).epsilon(1e-12));
    // Two equal samples: directivity is 2 (the grid covers half the circle).
    CHECK(samples[0].directivity_linear_db ==
          doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK(samples[0].directivity_distortion_db ==
          doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("directivity averages to one over the full circle") {
    const ChannelVector h = los_ula(32, 1.0, 80.0 * std::numbers::pi / 180.0,
                                    0.5);
    const Precoder w = z3ro_heuristic(h, {3, 7});
    const auto samples = radiation_pattern(w, {-0.05, 0.0}, 0.25, 0.5,
                                           default_theta_grid(512));
    double acc_lin = 0.0, acc_dst = 0.0;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        const double dt =
            samples[k + 1].theta_tilde_rad - samples[k].theta_tilde_rad;
        acc_lin += 0.5 * dt *
                   (std::pow(10.0, samples[k].directivity_linear_db / 10.0) +
                    std::pow(10.0, samples[k + 1].directivity_linear_db / 10.0));
        acc_dst +=
            0.5 * dt *
            (std::pow(10.0, samples[k].directivity_distortion_db / 10.0) +
             std::pow(10.0, samples[k + 1].directivity_distortion_db / 10.0));
    }
    CHECK(acc_lin / (2.0 * std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(acc_dst / (2.0 * std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("patterns are symmetric in the steering angle") {
    const ChannelVector h = los_ula(16, 1.0, 1.0, 0.5);
    const Precoder w = mrt(h);
    const auto samples =
        radiation_pattern(w, {-0.05, 0.0}, 1.0, 0.5, default_theta_grid(101));
    const std::size_t n = samples.size();
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(samples[k].linear_power ==
              doctest::Approx(samples[n - 1 - k].linear_power).epsilon(1e-12));
        CHECK(samples[k].distortion_power ==
              doctest::Approx(samples[n - 1 - k].distortion_power)
                  .epsilon(1e-12));
    }
}

TEST_CASE("pattern evaluation validates the grid") {
    Precoder w;
    w.w = {cxd{1.0, 0.0}};
    CHECK_THROWS_AS(radiation_pattern(w, {1.0, 0.0}, 1.0, 0.5, {0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(radiation_pattern(w, {1.0, 0.0}, 1.0, 0.5, {0.5, -0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(radiation_pattern(w, {1.0, 0.0}, 1.0, 0.5, {0.0, 4.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(radiation_pattern(w, {1.0, 0.0}, 0.0, 0.5, {0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(default_theta_grid(1), std::invalid_argument);

    const auto grid = default_theta_grid(9);
    CHECK(grid.front() == doctest::Approx(-std::numbers::pi));
    CHECK(grid.back() == doctest::Approx(std::numbers::pi));
    CHECK(grid[4] == doctest::Approx(0.0));
}

TEST_CASE("achievable rate is log2(1 + sndr)") {
    CHECK(achievable_rate(0.0) == 0.0);
    CHECK(achievable_rate(1.0) == doctest::Approx(1.0));
    CHECK(achievable_rate(3.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(achievable_rate(-0.1), std::invalid_argument);
}

TEST_CASE("ergodic averaging is deterministic and counts skips") {
    ChannelDrawSpec ch;
    ch.rayleigh = true;
    ch.M = 8;
    ch.beta = 1.0;
    ErgodicPrecoderSpec pre;
    pre.kind = PrecoderKind::Z3roHeuristic;
    pre.M_s = 1;

    const ErgodicStats a = ergodic_stats(ch, pre, IdealLinear{}, 1.0, 1.0,
                                         2000, 10, derive_stream(8, "erg"));
    const ErgodicStats b = ergodic_stats(ch, pre, IdealLinear{}, 1.0, 1.0,
                                         2000, 10, derive_stream(8, "erg"));
    CHECK(a.mean_rate_bps == b.mean_rate_bps);
    CHECK(a.mean_snr_db == b.mean_snr_db);
    CHECK(a.n_channels == 10);
    CHECK(a.n_skipped == 0);
    CHECK(a.mean_sdr_db == doctest::Approx(200.0)); // linear PA: capped SDR
    CHECK(a.mean_rate_bps > 0.0);

    // An equal-gain two-antenna channel admits no candidate: every draw of
    // the fixed constant-modulus channel is skipped.
    ChannelDrawSpec tiny = ch;
    tiny.rayleigh = false;
    tiny.M = 2;
    ErgodicPrecoderSpec cand;
    cand.kind = PrecoderKind::Theorem1Max;
    const ErgodicStats s = ergodic_stats(tiny, cand, IdealLinear{}, 1.0, 1.0,
                                         2000, 10, derive_stream(8, "skip"));
    CHECK(s.n_skipped == 10);
    CHECK(s.n_channels == 0);
    CHECK(s.mean_rate_bps == 0.0);
}

TEST_CASE("config-level ergodic rate wraps the channel average") {
    ExperimentConfig cfg;
    cfg.M = 16;
    cfg.M_s = 2;
    cfg.channel.kind = ChannelSpec::Kind::IidRayleigh;
    cfg.pa = Rapp{2.0, 1.0};
    cfg.n_symbols = 2000;
    cfg.snr_budget_db = 20.0;
    const double r1 = ergodic_rate(cfg, PrecoderKind::Mrt, 10,
                                   derive_stream(9, "rate"));
    const double r2 = ergodic_rate(cfg, PrecoderKind::Mrt, 10,
                                   derive_stream(9, "rate"));
    CHECK(r1 == r2);
    CHECK(r1 > 0.0);
    CHECK_THROWS_AS(
        ergodic_rate(cfg, PrecoderKind::Mrt, 5, derive_stream(9, "x")),
        std::invalid_argument);
}
