// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/channel.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace z3ro {

ChannelVector los_ula(int M, double beta, double theta_rad,
                      double spacing_over_lambda) {
    if (M < 1) throw std::invalid_argument("los_ula: M must be >= 1");
    if (!(beta >= 0.0))
        throw std::invalid_argument("los_ula: beta must be >= 0");
    if (!(spacing_over_lambda > 0.0))
        throw std::invalid_argument("los_ula: spacing must be positive");
    if (!std::isfinite(theta_rad))
        throw std::invalid_argument("los_ula: theta must be finite");

    const double amp = std::sqrt(beta);
    const double step =
        2.0 * std::numbers::pi * spacing_over_lambda * std::cos(theta_rad);
    ComplexVec h(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const double phi = static_cast<double>(m) * step;
        h[static_cast<std::size_t>(m)] = std::polar(amp, -phi);
    }
    return ChannelVector{std::move(h),
                         LosUla{beta, theta_rad, spacing_over_lambda}};
}

ChannelVector iid_rayleigh(int M, double beta, RngStream rng) {
    if (M < 1) throw std::invalid_argument("iid_rayleigh: M must be >= 1");
    if (!(beta >= 0.0))
        throw std::invalid_argument("iid_rayleigh: beta must be >= 0");
    ComplexVec h(static_cast<std::size_t>(M));
    for (auto& v : h) v = rng.next_cn(beta);
    return ChannelVector{std::move(h), IidRayleigh{beta}};
}

ChannelVector explicit_channel(ComplexVec h) {
    if (h.empty())
        throw std::invalid_argument("explicit_channel: length must be >= 1");
    return ChannelVector{std::move(h), Explicit{}};
}

std::vector<double> steering_phases(int M, double theta_tilde_rad,
                                    double spacing_over_lambda) {
    if (M < 1) throw std::invalid_argument("steering_phases: M must be >= 1");
    const double step = 2.0 * std::numbers::pi * spacing_over_lambda *
                        std::cos(theta_tilde_rad);
    std::vector<double> phi(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m)
        phi[static_cast<std::size_t>(m)] = static_cast<double>(m) * step;
    return phi;
}

std::vector<double> channel_gains(const ChannelVector& ch) {
    std::vector<double> r(ch.h.size());
    for (std::size_t m = 0; m < ch.h.size(); ++m) r[m] = std::abs(ch.h[m]);
    return r;
}

void save_channel_csv(const std::filesystem::path& path,
                      const ChannelVector& ch) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_channel_csv: cannot open " +
                                 path.string());
    out << "index,re,im\r\n";
    for (std::size_t m = 0; m < ch.h.size(); ++m)
        out << m << ',' << format_double(ch.h[m].real()) << ','
            << format_double(ch.h[m].imag()) << "\r\n";
}

ChannelVector load_channel_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_channel_csv: cannot open " +
                                 path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("load_channel_csv: empty file");
    ComplexVec h;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string idx, re, im;
        if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') ||
            !std::getline(row, im, ','))
            throw std::invalid_argument("load_channel_csv: malformed row at line " +
                                        std::to_string(lineno));
        try {
            h.emplace_back(std::stod(re), std::stod(im));
        } catch (const std::exception&) {
            throw std::invalid_argument("load_channel_csv: bad number at line " +
                                        std::to_string(lineno));
        }
    }
    if (h.empty())
        throw std::invalid_argument("load_channel_csv: no antenna rows");
    return ChannelVector{std::move(h), Explicit{}};
}

} // namespace z3ro
