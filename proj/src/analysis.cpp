// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "z3ro/config.hpp"

namespace z3ro {

namespace {

constexpr double kSdrSentinel = 1e20; // 200 dB

double db10(double x) { return 10.0 * std::log10(std::max(x, 1e-300)); }

// Per-variant sample kernels, duplicated from pa.cpp's dispatch so the
// symbol loop specializes per PA type instead of branching per sample.
cxd pa_one(const IdealLinear&, cxd x) { return x; }
cxd pa_one(const ThirdOrder& m, cxd x) { return x + m.a3 * x * std::norm(x); }
cxd pa_one(const Rapp& m, cxd x) {
    const double a = std::norm(x) / m.p_sat;
    if (a == 0.0) return x;
    double den;
    if (m.smoothness_S == 2.0) {
        den = std::sqrt(std::sqrt(1.0 + a * a));
    } else {
        den = std::pow(1.0 + std::pow(a, m.smoothness_S),
                       1.0 / (2.0 * m.smoothness_S));
    }
    return x / den;
}
cxd pa_one(const SoftLimiter& m, cxd x) {
    const double n2 = std::norm(x);
    if (n2 <= m.p_sat) return x;
    return x * std::sqrt(m.p_sat / n2);
}

} // namespace

double snr_closed_form_mrt(int M, double beta, double p, double sigma_v2) {
    if (M < 1) throw std::invalid_argument("snr_closed_form_mrt: M must be >= 1");
    if (!(sigma_v2 > 0.0))
        throw std::invalid_argument("snr_closed_form_mrt: sigma_v2 must be > 0");
    if (!(beta >= 0.0) || !(p >= 0.0))
        throw std::invalid_argument("snr_closed_form_mrt: negative power");
    return beta * p * static_cast<double>(M) / sigma_v2;
}

double snr_closed_form_z3ro_los(int M, int M_s, double beta, double p,
                                double sigma_v2) {
    if (M < 2)
        throw std::invalid_argument("snr_closed_form_z3ro_los: M must be >= 2");
    if (M_s <= 0 || 2 * M_s > M)
        throw std::invalid_argument(
            "snr_closed_form_z3ro_los: saturated count must satisfy 0 < 2*M_s <= M");
    if (!(sigma_v2 > 0.0))
        throw std::invalid_argument("snr_closed_form_z3ro_los: sigma_v2 must be > 0");
    if (!(beta >= 0.0) || !(p >= 0.0))
        throw std::invalid_argument("snr_closed_form_z3ro_los: negative power");
    const double z = static_cast<double>(M_s) / static_cast<double>(M);
    const double cz = std::cbrt(z);
    const double co = std::cbrt(1.0 - z);
    const double num = (cz * cz - co * co) * (cz * cz - co * co);
    const double den = cz + co;
    return beta * p / sigma_v2 * static_cast<double>(M) * num / den;
}

LinkMetrics bussgang_metrics(const ChannelVector& h, const Precoder& w,
                             const PaModel& pa, double p, double sigma_v2,
                             long long n_symbols, RngStream rng) {
    if (h.h.size() != w.w.size())
        throw std::invalid_argument("bussgang_metrics: length mismatch");
    if (n_symbols < 1000)
        throw std::invalid_argument("bussgang_metrics: n_symbols must be >= 1000");
    if (!(p > 0.0))
        throw std::invalid_argument("bussgang_metrics: p must be > 0");
    if (!(sigma_v2 > 0.0))
        throw std::invalid_argument("bussgang_metrics: sigma_v2 must be > 0");

    const std::size_t M = w.w.size();
    cxd sum_rs{0.0, 0.0};
    double sum_ss = 0.0;
    double sum_rr = 0.0;

    std::visit(
        [&](const auto& model) {
            for (long long n = 0; n < n_symbols; ++n) {
                const cxd s = rng.next_cn(p);
                cxd r{0.0, 0.0};
                for (std::size_t m = 0; m < M; ++m)
                    r += h.h[m] * pa_one(model, w.w[m] * s);
                sum_rs += r * std::conj(s);
                sum_ss += std::norm(s);
                sum_rr += std::norm(r);
            }
        },
        pa);

    const double inv_n = 1.0 / static_cast<double>(n_symbols);
    const cxd G = sum_rs / sum_ss;
    // Least-squares residual power; non-negative by Cauchy-Schwarz.
    const double dist =
        std::max(0.0, (sum_rr - std::norm(sum_rs) / sum_ss) * inv_n);
    const double mean_rr = sum_rr * inv_n;
    const double sig = std::norm(G) * p;

    LinkMetrics out;
    out.bussgang_gain_G = G;
    out.noise_power = sigma_v2;
    out.n_symbols = n_symbols;
    out.signal_power = sig;
    out.distortion_power = dist;
    out.snr = sig / sigma_v2;

    const double floor = 10.0 * mean_rr * inv_n;
    out.distortion_below_floor = dist < floor;
    out.sdr = out.distortion_below_floor ? kSdrSentinel : sig / dist;
    // Effective distortion derived back from the reported SDR keeps the
    // harmonic identity 1/sndr = 1/snr + 1/sdr exact even when capped.
    const double dist_eff = sig / out.sdr;
    out.sndr = sig / (dist_eff + sigma_v2);
    return out;
}

std::vector<PatternSample> radiation_pattern(
    const Precoder& w, cxd pa_a3, double p, double spacing_over_lambda,
    const std::vector<double>& theta_grid) {
    if (theta_grid.size() < 2)
        throw std::invalid_argument(
            "radiation_pattern: grid needs at least 2 points");
    if (!std::is_sorted(theta_grid.begin(), theta_grid.end()))
        throw std::invalid_argument("radiation_pattern: grid must be sorted");
    if (theta_grid.front() < -std::numbers::pi - 1e-12 ||
        theta_grid.back() > std::numbers::pi + 1e-12)
        throw std::invalid_argument(
            "radiation_pattern: grid must lie within [-pi, pi]");
    if (!(p > 0.0))
        throw std::invalid_argument("radiation_pattern: p must be > 0");
    if (!(spacing_over_lambda > 0.0))
        throw std::invalid_argument("radiation_pattern: spacing must be > 0");

    const std::size_t M = w.w.size();
    const std::size_t K = theta_grid.size();

    // Third-order distortion weights u_m = w_m |w_m|^2.
    ComplexVec u(M);
    for (std::size_t m = 0; m < M; ++m) u[m] = w.w[m] * std::norm(w.w[m]);

    const double dist_scale = std::norm(pa_a3) * 6.0 * p * p * p;

    std::vector<PatternSample> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double step = 2.0 * std::numbers::pi * spacing_over_lambda *
                            std::cos(theta_grid[k]);
        cxd lin{0.0, 0.0}, dst{0.0, 0.0};
        for (std::size_t m = 0; m < M; ++m) {
            const cxd e = std::polar(1.0, -static_cast<double>(m) * step);
            lin += w.w[m] * e;
            dst += u[m] * e;
        }
        out[k].theta_tilde_rad = theta_grid[k];
        out[k].linear_power = p * std::norm(lin);
        out[k].distortion_power = dist_scale * std::norm(dst);
    }

    const double total_lin = pattern_total_linear_power(out);
    const double total_dst = pattern_total_distortion_power(out);
    const double two_pi = 2.0 * std::numbers::pi;
    for (auto& s : out) {
        s.directivity_linear_db =
            total_lin > 0.0 ? db10(s.linear_power / (total_lin / two_pi))
                            : -300.0;
        s.directivity_distortion_db =
            total_dst > 0.0 ? db10(s.distortion_power / (total_dst / two_pi))
                            : -300.0;
    }
    return out;
}

std::vector<double> default_theta_grid(int n) {
    if (n < 2)
        throw std::invalid_argument("default_theta_grid: need at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double lo = -std::numbers::pi, hi = std::numbers::pi;
    for (int k = 0; k < n; ++k)
        grid[static_cast<std::size_t>(k)] =
            lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return grid;
}

namespace {
double trapezoid(const std::vector<PatternSample>& s,
                 double PatternSample::*field) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < s.size(); ++k)
        acc += 0.5 * (s[k].*field + s[k + 1].*field) *
               (s[k + 1].theta_tilde_rad - s[k].theta_tilde_rad);
    return acc;
}
} // namespace

double pattern_total_linear_power(const std::vector<PatternSample>& samples) {
    return trapezoid(samples, &PatternSample::linear_power);
}

double pattern_total_distortion_power(
    const std::vector<PatternSample>& samples) {
    return trapezoid(samples, &PatternSample::distortion_power);
}

double achievable_rate(double sndr) {
    if (!(sndr >= 0.0))
        throw std::invalid_argument("achievable_rate: sndr must be >= 0");
    return std::log2(1.0 + sndr);
}

ErgodicStats ergodic_stats(const ChannelDrawSpec& ch,
                           const ErgodicPrecoderSpec& pre, const PaModel& pa,
                           double p, double sigma_v2, long long n_symbols,
                           int n_channels, RngStream rng) {
    if (n_channels < 1)
        throw std::invalid_argument("ergodic_stats: n_channels must be >= 1");

    ErgodicStats st;
    double acc_rate = 0.0, acc_snr = 0.0, acc_sdr = 0.0, acc_sndr = 0.0;
    int used = 0;

    for (int i = 0; i < n_channels; ++i) {
        const ChannelVector hch =
            ch.rayleigh
                ? iid_rayleigh(ch.M, ch.beta,
                               derive_substream(rng, 2 * static_cast<std::uint64_t>(i)))
                : los_ula(ch.M, ch.beta, ch.theta_rad, ch.spacing_over_lambda);

        Precoder w;
        try {
            switch (pre.kind) {
                case PrecoderKind::Mrt:
                    w = mrt(hch);
                    break;
                case PrecoderKind::Z3roHeuristic:
                    w = z3ro_heuristic(hch, pre.saturated_set.empty()
                                                ? default_saturated_set(hch, pre.M_s)
                                                : pre.saturated_set);
                    break;
                case PrecoderKind::Theorem1Max:
                    w = theorem1_global(hch);
                    break;
                case PrecoderKind::LosCritical:
                    w = with_channel_phases(
                        los_critical_point(ch.M, pre.M_s, ch.beta), hch);
                    break;
            }
        } catch (const std::domain_error&) {
            ++st.n_skipped; // pathological draw (e.g. no feasible candidate)
            continue;
        }

        const LinkMetrics lm = bussgang_metrics(
            hch, w, pa, p, sigma_v2, n_symbols,
            derive_substream(rng, 2 * static_cast<std::uint64_t>(i) + 1));
        acc_rate += achievable_rate(lm.sndr);
        acc_snr += db10(lm.snr);
        acc_sdr += db10(lm.sdr);
        acc_sndr += db10(lm.sndr);
        ++used;
    }

    st.n_channels = used;
    if (used > 0) {
        const double inv = 1.0 / static_cast<double>(used);
        st.mean_rate_bps = acc_rate * inv;
        st.mean_snr_db = acc_snr * inv;
        st.mean_sdr_db = acc_sdr * inv;
        st.mean_sndr_db = acc_sndr * inv;
    }
    return st;
}

double ergodic_rate(const ExperimentConfig& config, PrecoderKind kind,
                    int n_channels, RngStream rng) {
    if (n_channels < 10)
        throw std::invalid_argument("ergodic_rate: n_channels must be >= 10");

    ChannelDrawSpec ch;
    ch.rayleigh = config.channel.kind == ChannelSpec::Kind::IidRayleigh;
    ch.M = config.M;
    ch.beta = config.channel.beta;
    ch.theta_rad = config.theta_deg * std::numbers::pi / 180.0;
    ch.spacing_over_lambda = config.spacing_over_lambda;

    ErgodicPrecoderSpec pre;
    pre.kind = kind;
    pre.M_s = config.M_s;
    if (config.saturated_set) pre.saturated_set = *config.saturated_set;

    // sigma_v^2 = 1 by convention; the budget is M*beta*p in dB.
    const double p = db_to_linear(Decibel{config.snr_budget_db}) /
                     (static_cast<double>(config.M) * config.channel.beta);
    const ErgodicStats st = ergodic_stats(ch, pre, config.pa, p, 1.0,
                                          config.n_symbols, n_channels, rng);
    return st.mean_rate_bps;
}

} // namespace z3ro
