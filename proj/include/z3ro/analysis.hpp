// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Link-level analysis: closed-form SNR expressions, Bussgang-decomposition
// Monte Carlo (SNR/SDR/SNDR), array radiation and distortion patterns with
// directivity, and achievable/ergodic rates.

#pragma once

#include <vector>

#include "z3ro/channel.hpp"
#include "z3ro/core.hpp"
#include "z3ro/pa.hpp"
#include "z3ro/precoder.hpp"

namespace z3ro {

struct ExperimentConfig; // config.hpp

/// Bussgang link decomposition r = G*s + d + v. Noise enters analytically
/// through noise_power; distortion is estimated from noiseless samples.
/// All ratios are linear. When the distortion estimate falls below the
/// Monte-Carlo floor (10*E|r~|^2/n_symbols), sdr is reported as the 200 dB
/// sentinel (1e20) and distortion_below_floor is set; the identity
/// 1/sndr = 1/snr + 1/sdr holds exactly in all cases.
struct LinkMetrics {
    cxd bussgang_gain_G{0.0, 0.0};
    double signal_power = 0.0;     // |G|^2 * p
    double distortion_power = 0.0; // residual power estimate, >= 0
    double noise_power = 0.0;      // sigma_v^2
    double snr = 0.0;
    double sdr = 0.0;
    double sndr = 0.0;
    long long n_symbols = 0;
    bool distortion_below_floor = false;
};

/// One direction sample of the array patterns. Directivities are each
/// normalized by that pattern's own total power over the evaluation grid,
/// so (1/2pi) * integral of the linear directivity over a full-circle grid
/// is 1 (0 dBi on average).
struct PatternSample {
    double theta_tilde_rad = 0.0;
    double linear_power = 0.0;
    double distortion_power = 0.0;
    double directivity_linear_db = 0.0;
    double directivity_distortion_db = 0.0;
};

/// beta * p * M / sigma_v^2.
double snr_closed_form_mrt(int M, double beta, double p, double sigma_v2);

/// Constant-gain-channel SNR of the distortion-nulling precoder:
/// (beta*p/sigma_v^2) * M * (z^(2/3) - (1-z)^(2/3))^2 / (z^(1/3) + (1-z)^(1/3))
/// with z = M_s/M. Accepts 2*M_s <= M (zero at equality).
double snr_closed_form_z3ro_los(int M, int M_s, double beta, double p,
                                double sigma_v2);

/// Draws n_symbols of s ~ CN(0,p), pushes w*s through the PA per antenna,
/// combines through h, and least-squares fits G to the drawn symbols:
/// G = sum(r~ s*)/sum|s|^2, distortion = mean|r~ - G s|^2. The sample form
/// keeps the distortion estimate non-negative and accurate relative to
/// itself rather than to E|r~|^2.
LinkMetrics bussgang_metrics(const ChannelVector& h, const Precoder& w,
                             const PaModel& pa, double p, double sigma_v2,
                             long long n_symbols, RngStream rng);

/// Evaluates the linear pattern p*|sum_m w_m e^(-j phi~_m)|^2 and the
/// third-order distortion pattern |a3|^2 * 6p^3 * |sum_m w_m|w_m|^2
/// e^(-j phi~_m)|^2 over theta_grid (sorted, in [-pi, pi], >= 2 points).
/// 6p^3 is E|s|^6 for circular Gaussian symbols.
std::vector<PatternSample> radiation_pattern(const Precoder& w, cxd pa_a3,
                                             double p,
                                             double spacing_over_lambda,
                                             const std::vector<double>& theta_grid);

/// Uniform grid of n points spanning [-pi, pi] inclusive (n >= 2).
std::vector<double> default_theta_grid(int n = 2048);

/// Trapezoidal total power over the sample grid.
double pattern_total_linear_power(const std::vector<PatternSample>& samples);
double pattern_total_distortion_power(const std::vector<PatternSample>& samples);

/// log2(1 + sndr) bits per symbol; sndr must be >= 0.
double achievable_rate(double sndr);

/// Per-channel-draw link statistics averaged over n_channels draws.
/// Channels and symbol streams are derived from `rng` by draw index, so the
/// result is reproducible and identical across thread counts. Draws whose
/// candidate search is infeasible are skipped (counted in n_skipped).
struct ErgodicStats {
    double mean_rate_bps = 0.0;
    double mean_snr_db = 0.0;
    double mean_sdr_db = 0.0;
    double mean_sndr_db = 0.0;
    int n_channels = 0;
    int n_skipped = 0;
};

/// Channel generator for ergodic averaging.
struct ChannelDrawSpec {
    bool rayleigh = true;  // false: fixed LOS channel re-used for every draw
    int M = 64;
    double beta = 1.0;
    double theta_rad = 0.0;
    double spacing_over_lambda = 0.5;
};

/// Precoder selector for ergodic averaging. For Z3roHeuristic the saturated
/// set is the explicit one when provided, else the median-gain default of
/// size M_s. Theorem1Max uses the best feasible candidate.
struct ErgodicPrecoderSpec {
    PrecoderKind kind = PrecoderKind::Mrt;
    int M_s = 1;
    std::vector<int> saturated_set; // empty = default set
};

ErgodicStats ergodic_stats(const ChannelDrawSpec& ch,
                           const ErgodicPrecoderSpec& pre, const PaModel& pa,
                           double p, double sigma_v2, long long n_symbols,
                           int n_channels, RngStream rng);

/// Mean achievable rate over channel draws for one experiment configuration
/// (channel model, PA, and symbol budget from the config; transmit power
/// from its SNR budget with sigma_v^2 = 1). Deterministic per stream value.
double ergodic_rate(const ExperimentConfig& config, PrecoderKind kind,
                    int n_channels, RngStream rng);

} // namespace z3ro
