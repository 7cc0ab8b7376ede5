// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Shared domain types: complex baseband vectors, deterministic RNG streams,
// decibel conversions, and a scheduling-independent parallel loop.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace z3ro {

/// Complex baseband amplitude. One representation serves symbols, weights,
/// channel gains, and PA input/output samples.
using cxd = std::complex<double>;
using ComplexVec = std::vector<cxd>;

/// A value on the decibel scale, 10*log10 of a linear power ratio.
struct Decibel {
    double value_db = 0.0;
};

/// 10^(x/10). Round-trips with linear_to_db to better than 1e-12 relative.
double db_to_linear(Decibel x);

/// Inverse of db_to_linear; requires a strictly positive linear value.
Decibel linear_to_db(double linear);

/// Counter-based pseudo-random stream. A stream is fully identified by
/// (master_seed, stream_id); the n-th draw depends only on that identity and
/// on n, never on thread scheduling. Copies replay the identical sequence.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t counter = 0;

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_uniform();

    /// Circular complex Gaussian CN(0, p): (a + jb)*sqrt(p/2) with a, b
    /// standard normal (Box-Muller pair). Requires p >= 0.
    cxd next_cn(double p);
};

/// Deterministic, collision-resistant stream from a (seed, label) pair.
RngStream derive_stream(std::uint64_t master_seed, std::string_view label);

/// Indexed variant: one independent stream per trial/point index.
RngStream derive_stream(std::uint64_t master_seed, std::string_view label,
                        std::uint64_t index);

/// Child stream keyed by index. Children of the same parent are mutually
/// independent and independent of the parent draws.
RngStream derive_substream(const RngStream& parent, std::uint64_t index);

/// Runs fn(0), ..., fn(n-1) on up to `threads` workers using a static block
/// split. Callers write results to disjoint, index-addressed slots, so the
/// outcome is identical for every thread count. threads <= 1 runs inline.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// Shortest decimal form that round-trips exactly; '.' decimal separator,
/// locale-independent. Used for all CSV numeric output.
std::string format_double(double v);

} // namespace z3ro
