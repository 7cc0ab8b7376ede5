// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Independent verification tools: an exhaustive small-array optimizer used
// as an oracle for the candidate-maximum construction, finite-difference
// second-order (Hessian) checks of the reduced objective, and an
// exploratory search over complex-valued gains.

#pragma once

#include <vector>

#include "z3ro/channel.hpp"
#include "z3ro/core.hpp"

namespace z3ro {

/// Best point found by the exhaustive grid + local refinement.
struct OracleResult {
    std::vector<double> best_g;   // unit power, zero third-order residual
    double best_array_gain = 0.0; // (sum_m r_m g_m)^2
    long long grid_points_evaluated = 0;
};

/// Grids the reduced problem over (g_1..g_{M-1}) in [-1,1]^(M-1) with grid_n
/// points per axis, eliminating g_0 through the real cube-root form of the
/// zero-distortion constraint, then refines the best cell by coordinate
/// pattern search. Exhaustive-cost oracle: 3 <= M <= 5, 64 <= grid_n <= 512.
OracleResult brute_force_real(const std::vector<double>& r, int grid_n);

/// Spectrum of the central finite-difference Hessian of the reduced
/// objective at a critical point. Antenna 0 is the eliminated coordinate;
/// callers reorder (r, g) so the saturated antenna of interest sits first.
/// max_asymmetry is measured before symmetrization.
struct HessianSummary {
    std::vector<double> eigenvalues; // ascending
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double max_asymmetry = 0.0;
};

/// g must satisfy unit power and the zero-residual constraint to 1e-8
/// (relative for the residual); violations raise invalid_argument.
HessianSummary hessian_check(const std::vector<double>& r,
                             const std::vector<double>& g,
                             double fd_step = 1e-5);

/// Random-restart projected search over complex gains subject to unit power
/// and a zero complex third-order residual, compared against the best
/// real-gain candidate. Informational: reports the gap, asserts nothing.
struct ConjectureProbe {
    double best_complex_objective = 0.0; // max |sum r g|^2 found
    double best_real_objective = 0.0;    // best real-gain candidate
    double gap = 0.0;                    // complex - real
    int n_restarts = 0;
};

ConjectureProbe conjecture_probe(const std::vector<double>& r, int n_restarts,
                                 RngStream rng);

} // namespace z3ro
