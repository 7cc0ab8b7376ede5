// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Channel vector generation (line-of-sight uniform linear array, i.i.d.
// Rayleigh fading, explicit injection) and steering phases for patterns.

#pragma once

#include <filesystem>
#include <variant>
#include <vector>

#include "z3ro/core.hpp"

namespace z3ro {

/// Line-of-sight uniform linear array: h_m = sqrt(beta) * exp(-j*phi_m) with
/// phi_m = m * 2*pi * (d/lambda) * cos(theta).
struct LosUla {
    double beta = 1.0;
    double theta_rad = 0.0;
    double spacing_over_lambda = 0.5;
};

/// Independent CN(0, beta) entries.
struct IidRayleigh {
    double beta = 1.0;
};

/// Gains injected verbatim (tests, file input).
struct Explicit {};

using ChannelModel = std::variant<LosUla, IidRayleigh, Explicit>;

struct ChannelVector {
    ComplexVec h;
    ChannelModel model = Explicit{};

    int size() const { return static_cast<int>(h.size()); }
};

/// Constant-modulus LOS ULA channel; throws on non-positive spacing.
ChannelVector los_ula(int M, double beta, double theta_rad,
                      double spacing_over_lambda);

/// i.i.d. Rayleigh channel; deterministic for a given stream value.
ChannelVector iid_rayleigh(int M, double beta, RngStream rng);

/// Wraps caller-provided gains.
ChannelVector explicit_channel(ComplexVec h);

/// phi~_m = m * 2*pi * (d/lambda) * cos(theta~), m = 0..M-1.
std::vector<double> steering_phases(int M, double theta_tilde_rad,
                                    double spacing_over_lambda);

/// Per-antenna magnitudes r_m = |h_m|.
std::vector<double> channel_gains(const ChannelVector& ch);

/// CSV round-trip, one row per antenna: index,re,im (header row included).
void save_channel_csv(const std::filesystem::path& path,
                      const ChannelVector& ch);
ChannelVector load_channel_csv(const std::filesystem::path& path);

} // namespace z3ro
