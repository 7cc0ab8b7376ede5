// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Linear precoders for a single-user array: maximum ratio transmission and
// the family of unit-power precoders that null the third-order PA distortion
// at the user (one negative "saturated" antenna gain cancels the rest).

#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "z3ro/channel.hpp"
#include "z3ro/core.hpp"

namespace z3ro {

enum class PrecoderKind { Mrt, Z3roHeuristic, LosCritical, Theorem1Max };

/// Unit-power precoding vector plus construction metadata. For every
/// non-MRT kind the third-order distortion residual sum_m h_m w_m |w_m|^2
/// is zero by construction, and the array response sum_m h_m w_m is rotated
/// real-positive.
struct Precoder {
    ComplexVec w;
    std::vector<int> saturated_set; // sorted; empty for MRT
    PrecoderKind kind = PrecoderKind::Mrt;
    std::optional<double> xi;       // line-search multiplier ratio, if any
    double alpha = 1.0;             // power-normalization constant
};

/// Outcome of the scalar root bracket-and-bisect for xi.
struct LineSearchResult {
    double xi = 0.0;
    double residual = 0.0; // |F(xi)| relative to the saturated-antenna term
    int iterations = 0;
    bool feasible = false;
};

/// w_m = h_m* / ||h||; maximizes array gain with no distortion constraint.
Precoder mrt(const ChannelVector& h);

/// Closed-form distortion-nulling precoder: gains proportional to r_m, the
/// chosen saturated antennas scaled by -gamma with
/// gamma = (sum_{out} r^4 / sum_{in} r^4)^(1/3). Zero residual for any
/// channel. Requires 0 < |saturated_set| < M/2 and all r_m > 0.
Precoder z3ro_heuristic(const ChannelVector& h,
                        const std::vector<int>& saturated_set);

/// Default saturated set: the M_s antennas whose gain is closest to the
/// median gain (ties broken toward the smaller index); sorted ascending.
std::vector<int> default_saturated_set(const ChannelVector& h, int M_s);

/// Constant-gain-channel critical point: the first M_s antennas carry gain
/// -((M-M_s)/M_s)^(1/3) relative to the rest. Accepts 2*M_s <= M; equality
/// gives a zero-array-gain point. Phases are zero; use with_channel_phases
/// to retarget an arbitrary constant-modulus channel.
Precoder los_critical_point(int M, int M_s, double beta);

/// Re-phases a real-gain precoder onto channel h: w_m <- |w_m|*sign *
/// exp(-j*angle(h_m)). Magnitudes and the zero-residual property (on h with
/// constant |h_m|) are preserved.
Precoder with_channel_phases(const Precoder& p, const ChannelVector& h);

/// Solves F(xi) = sum_{m != m'} (-1+sqrt(1+r_m^2 xi))^3/r_m^2
///              - (1+sqrt(1+r_{m'}^2 xi))^3/r_{m'}^2 = 0 for xi > 0 by
/// bracket doubling from 1 up to 1e12/min(r)^2 and bisection. feasible=false
/// when no sign change exists in the bracket (one dominant gain).
LineSearchResult theorem1_xi_solve(const std::vector<double>& r, int m_prime,
                                   double tol = 1e-12, int max_iter = 200);

/// Candidate maximum with antenna m' saturated:
/// g_m = alpha*(-1+sqrt(1+r_m^2 xi))/r_m (m != m'),
/// g_{m'} = alpha*(-1-sqrt(1+r_{m'}^2 xi))/r_{m'}. Empty when the xi solve
/// is infeasible.
std::optional<Precoder> theorem1_max(const ChannelVector& h, int m_prime);

/// Best feasible candidate over all m' (largest array response, ties to the
/// smallest m'). Throws if every candidate is infeasible.
Precoder theorem1_global(const ChannelVector& h);

/// sum_m h_m w_m |w_m|^2, the third-order distortion seen at the user.
cxd distortion_residual(const ChannelVector& h, const ComplexVec& w);

/// |sum_m h_m w_m|^2.
double array_gain(const ChannelVector& h, const ComplexVec& w);

/// CSV export, one row per antenna: index,re,im,is_saturated.
void save_precoder_csv(const std::filesystem::path& path, const Precoder& p);

} // namespace z3ro
