// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/precoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace z3ro {

namespace {

// sqrt(1+x) - 1 without cancellation for small x.
double sqrt1p_m1(double x) { return x / (1.0 + std::sqrt(1.0 + x)); }

double cube(double x) { return x * x * x; }

std::vector<double> positive_gains(const ChannelVector& h, const char* who) {
    std::vector<double> r = channel_gains(h);
    for (double v : r)
        if (!(v > 0.0))
            throw std::domain_error(std::string(who) +
                                    ": zero-gain antenna; strip inactive "
                                    "antennas before precoding");
    return r;
}

// Normalizes real gains, fixes the global phase so the array response
// sum_m r_m g_m is non-negative, and attaches channel phases.
Precoder build_from_real_gains(const ChannelVector& h, std::vector<double> g,
                               PrecoderKind kind, std::vector<int> sat,
                               std::optional<double> xi) {
    double norm2 = 0.0;
    for (double v : g) norm2 += v * v;
    if (!(norm2 > 0.0))
        throw std::domain_error("precoder: all-zero gain vector");
    const double alpha = 1.0 / std::sqrt(norm2);

    double response = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        response += std::abs(h.h[m]) * g[m];
    const double sign = response < 0.0 ? -1.0 : 1.0;

    Precoder p;
    p.w.resize(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double gm = sign * alpha * g[m];
        const double ang = std::arg(h.h[m]);
        // std::polar requires a non-negative magnitude; carry the gain sign
        // outside so a zero-phase channel yields an exactly real weight.
        p.w[m] = gm >= 0.0 ? std::polar(gm, -ang) : -std::polar(-gm, -ang);
    }
    p.saturated_set = std::move(sat);
    std::sort(p.saturated_set.begin(), p.saturated_set.end());
    p.kind = kind;
    p.xi = xi;
    p.alpha = alpha;
    return p;
}

void check_sat_set(const std::vector<int>& sat, int M, bool strict_half,
                   const char* who) {
    if (sat.empty())
        throw std::invalid_argument(std::string(who) +
                                    ": saturated set must not be empty");
    std::vector<int> s = sat;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument(std::string(who) +
                                    ": duplicate saturated index");
    if (s.front() < 0 || s.back() >= M)
        throw std::invalid_argument(std::string(who) +
                                    ": saturated index out of range");
    const int ms = static_cast<int>(s.size());
    if (strict_half ? (2 * ms >= M) : (2 * ms > M))
        throw std::invalid_argument(std::string(who) +
                                    ": saturated set must satisfy 0 < M_s < M/2");
}

} // namespace

Precoder mrt(const ChannelVector& h) {
    double norm2 = 0.0;
    for (const cxd& v : h.h) norm2 += std::norm(v);
    if (!(norm2 > 0.0))
        throw std::domain_error("mrt: all-zero channel");
    const double inv = 1.0 / std::sqrt(norm2);
    Precoder p;
    p.w.resize(h.h.size());
    for (std::size_t m = 0; m < h.h.size(); ++m)
        p.w[m] = std::conj(h.h[m]) * inv;
    p.kind = PrecoderKind::Mrt;
    p.alpha = inv;
    return p;
}

Precoder z3ro_heuristic(const ChannelVector& h,
                        const std::vector<int>& saturated_set) {
    const int M = h.size();
    check_sat_set(saturated_set, M, /*strict_half=*/true, "z3ro_heuristic");
    const std::vector<double> r = positive_gains(h, "z3ro_heuristic");

    std::vector<char> in_set(static_cast<std::size_t>(M), 0);
    for (int m : saturated_set) in_set[static_cast<std::size_t>(m)] = 1;

    double quartic_out = 0.0, quartic_in = 0.0;
    for (int m = 0; m < M; ++m) {
        const double r4 = r[m] * r[m] * r[m] * r[m];
        (in_set[m] ? quartic_in : quartic_out) += r4;
    }
    const double gamma = std::cbrt(quartic_out / quartic_in);

    std::vector<double> g(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m)
        g[m] = in_set[m] ? -gamma * r[m] : r[m];
    return build_from_real_gains(h, std::move(g), PrecoderKind::Z3roHeuristic,
                                 saturated_set, std::nullopt);
}

std::vector<int> default_saturated_set(const ChannelVector& h, int M_s) {
    const int M = h.size();
    if (M_s <= 0 || 2 * M_s >= M)
        throw std::invalid_argument(
            "default_saturated_set: saturated set must satisfy 0 < M_s < M/2");
    const std::vector<double> r = channel_gains(h);

    std::vector<int> order(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) order[m] = m;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return r[a] < r[b]; });
    const double median =
        (M % 2 == 1) ? r[order[M / 2]]
                     : 0.5 * (r[order[M / 2 - 1]] + r[order[M / 2]]);

    std::vector<int> by_closeness(order.begin(), order.end());
    std::sort(by_closeness.begin(), by_closeness.end(), [&](int a, int b) {
        const double da = std::abs(r[a] - median);
        const double db = std::abs(r[b] - median);
        if (da != db) return da < db;
        return a < b;
    });
    std::vector<int> sat(by_closeness.begin(), by_closeness.begin() + M_s);
    std::sort(sat.begin(), sat.end());
    return sat;
}

Precoder los_critical_point(int M, int M_s, double beta) {
    if (M < 2) throw std::invalid_argument("los_critical_point: M must be >= 2");
    if (M_s <= 0 || 2 * M_s > M)
        throw std::invalid_argument(
            "los_critical_point: saturated count must satisfy 0 < 2*M_s <= M");
    if (!(beta >= 0.0))
        throw std::invalid_argument("los_critical_point: beta must be >= 0");

    const double c =
        std::cbrt(static_cast<double>(M - M_s) / static_cast<double>(M_s));
    std::vector<double> g(static_cast<std::size_t>(M), 1.0);
    std::vector<int> sat(static_cast<std::size_t>(M_s));
    for (int m = 0; m < M_s; ++m) {
        g[m] = -c;
        sat[m] = m;
    }
    // The weight vector is independent of beta and of the LOS phases; build
    // against an exactly-real unit channel and re-phase via
    // with_channel_phases when targeting a steered array.
    const ChannelVector zero_phase =
        explicit_channel(ComplexVec(static_cast<std::size_t>(M), cxd{1.0, 0.0}));
    return build_from_real_gains(zero_phase, std::move(g),
                                 PrecoderKind::LosCritical, std::move(sat),
                                 std::nullopt);
}

Precoder with_channel_phases(const Precoder& p, const ChannelVector& h) {
    if (p.w.size() != h.h.size())
        throw std::invalid_argument("with_channel_phases: length mismatch");
    Precoder out = p;
    for (std::size_t m = 0; m < p.w.size(); ++m) {
        if (std::abs(p.w[m].imag()) > 1e-12 * (1.0 + std::abs(p.w[m].real())))
            throw std::invalid_argument(
                "with_channel_phases: precoder gains must be real");
        const double gm = p.w[m].real();
        const double ang = std::arg(h.h[m]);
        out.w[m] = gm >= 0.0 ? std::polar(gm, -ang) : -std::polar(-gm, -ang);
    }
    return out;
}

LineSearchResult theorem1_xi_solve(const std::vector<double>& r, int m_prime,
                                   double tol, int max_iter) {
    const int M = static_cast<int>(r.size());
    if (M < 2)
        throw std::invalid_argument("theorem1_xi_solve: need at least 2 antennas");
    if (m_prime < 0 || m_prime >= M)
        throw std::invalid_argument("theorem1_xi_solve: m_prime out of range");
    if (!(tol > 0.0) || max_iter < 1)
        throw std::invalid_argument("theorem1_xi_solve: bad solver parameters");
    double rmin = std::numeric_limits<double>::infinity();
    for (double v : r) {
        if (!(v > 0.0))
            throw std::invalid_argument(
                "theorem1_xi_solve: gains must be positive");
        rmin = std::min(rmin, v);
    }

    // F(xi) < 0 at 0; a root exists iff F turns positive before the cap.
    const auto eval = [&](double xi) {
        double lhs = 0.0;
        for (int m = 0; m < M; ++m) {
            if (m == m_prime) continue;
            const double x = r[m] * r[m] * xi;
            lhs += cube(sqrt1p_m1(x)) / (r[m] * r[m]);
        }
        const double rp2 = r[m_prime] * r[m_prime];
        const double rhs = cube(1.0 + std::sqrt(1.0 + rp2 * xi)) / rp2;
        return std::pair<double, double>{lhs - rhs, rhs};
    };

    const double xi_max = 1e12 / (rmin * rmin);
    double lo = 0.0, hi = 1.0;
    int iters = 0;
    auto [f_hi, scale_hi] = eval(hi);
    while (f_hi <= 0.0) {
        lo = hi;
        hi *= 2.0;
        ++iters;
        if (hi > xi_max)
            return LineSearchResult{hi, f_hi / scale_hi, iters, false};
        std::tie(f_hi, scale_hi) = eval(hi);
    }

    double xi = hi;
    double rel = f_hi / scale_hi;
    while (iters < max_iter &&
           (hi - lo > tol * hi || std::abs(rel) > tol)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // double resolution exhausted
        const auto [f, scale] = eval(mid);
        xi = mid;
        rel = f / scale;
        if (f > 0.0)
            hi = mid;
        else
            lo = mid;
        ++iters;
    }
    return LineSearchResult{xi, rel, iters, true};
}

std::optional<Precoder> theorem1_max(const ChannelVector& h, int m_prime) {
    const std::vector<double> r = positive_gains(h, "theorem1_max");
    const LineSearchResult ls = theorem1_xi_solve(r, m_prime);
    if (!ls.feasible) return std::nullopt;

    const int M = h.size();
    std::vector<double> g(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        if (m == m_prime) {
            g[m] = -(1.0 + std::sqrt(1.0 + r[m] * r[m] * ls.xi)) / r[m];
        } else {
            g[m] = sqrt1p_m1(r[m] * r[m] * ls.xi) / r[m];
        }
    }
    return build_from_real_gains(h, std::move(g), PrecoderKind::Theorem1Max,
                                 {m_prime}, ls.xi);
}

Precoder theorem1_global(const ChannelVector& h) {
    const int M = h.size();
    std::optional<Precoder> best;
    double best_response = -std::numeric_limits<double>::infinity();
    for (int mp = 0; mp < M; ++mp) {
        std::optional<Precoder> cand = theorem1_max(h, mp);
        if (!cand) continue;
        cxd resp{0.0, 0.0};
        for (int m = 0; m < M; ++m) resp += h.h[m] * cand->w[m];
        // Strict > keeps the smallest m' on ties.
        if (resp.real() > best_response) {
            best_response = resp.real();
            best = std::move(cand);
        }
    }
    if (!best)
        throw std::domain_error(
            "theorem1_global: no feasible candidate (one gain dominates the "
            "array)");
    return *best;
}

cxd distortion_residual(const ChannelVector& h, const ComplexVec& w) {
    if (h.h.size() != w.size())
        throw std::invalid_argument("distortion_residual: length mismatch");
    cxd acc{0.0, 0.0};
    for (std::size_t m = 0; m < w.size(); ++m)
        acc += h.h[m] * w[m] * std::norm(w[m]);
    return acc;
}

double array_gain(const ChannelVector& h, const ComplexVec& w) {
    if (h.h.size() != w.size())
        throw std::invalid_argument("array_gain: length mismatch");
    cxd acc{0.0, 0.0};
    for (std::size_t m = 0; m < w.size(); ++m) acc += h.h[m] * w[m];
    return std::norm(acc);
}

void save_precoder_csv(const std::filesystem::path& path, const Precoder& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_precoder_csv: cannot open " +
                                 path.string());
    std::vector<char> sat(p.w.size(), 0);
    for (int m : p.saturated_set)
        if (m >= 0 && static_cast<std::size_t>(m) < sat.size())
            sat[static_cast<std::size_t>(m)] = 1;
    out << "index,re,im,is_saturated\r\n";
    for (std::size_t m = 0; m < p.w.size(); ++m)
        out << m << ',' << format_double(p.w[m].real()) << ','
            << format_double(p.w[m].imag()) << ',' << int(sat[m]) << "\r\n";
}

} // namespace z3ro
