// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Memoryless power-amplifier transfer functions, applied element-wise to
// precoded baseband samples. All variants have unit linear gain and y(0)=0.

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "z3ro/core.hpp"

namespace z3ro {

/// y = x.
struct IdealLinear {};

/// y = x + a3 * x * |x|^2. Complex a3 covers AM/AM and AM/PM; compressive
/// behaviour corresponds to Re(a3) < 0.
struct ThirdOrder {
    cxd a3{-0.05, 0.0};
};

/// y = x / (1 + |x/sqrt(p_sat)|^(2S))^(1/(2S)); smooth saturation toward
/// sqrt(p_sat), harder as S grows.
struct Rapp {
    double smoothness_S = 2.0;
    double p_sat = 1.0;
};

/// Phase-preserving clip at sqrt(p_sat): the S -> infinity limit of Rapp.
/// Models an ideally pre-distorted PA (linear below saturation).
struct SoftLimiter {
    double p_sat = 1.0;
};

using PaModel = std::variant<IdealLinear, ThirdOrder, Rapp, SoftLimiter>;

/// Applies the transfer function to one sample.
cxd amplify(const PaModel& model, cxd x);

/// Element-wise amplify; output length equals input length.
ComplexVec amplify_vec(const PaModel& model, const ComplexVec& x);

/// Parses the CLI grammar:
///   linear | third-order:a3=<c> | rapp:S=<v>,psat=<v> | softlim:psat=<v>
/// where <c> is a real number or re+imj / re-imj / (re,im).
PaModel parse_pa_spec(std::string_view text);

/// Inverse of parse_pa_spec (canonical spelling, round-trips).
std::string pa_spec_string(const PaModel& model);

/// Copy of `model` with its saturation power replaced; throws for variants
/// without a p_sat parameter (used by back-off sweeps).
PaModel with_p_sat(const PaModel& model, double p_sat);

/// True for Rapp and SoftLimiter.
bool has_p_sat(const PaModel& model);

} // namespace z3ro
