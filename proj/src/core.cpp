// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/core.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace z3ro {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 output function; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// Effective per-stream key; mixing both fields keeps streams with equal
// XOR of (seed, id) distinct.
std::uint64_t stream_key(const RngStream& s) {
    return mix64(mix64(s.master_seed + kGolden) ^ s.stream_id);
}

} // namespace

double db_to_linear(Decibel x) { return std::pow(10.0, x.value_db / 10.0); }

Decibel linear_to_db(double linear) {
    if (!(linear > 0.0))
        throw std::invalid_argument("linear_to_db: value must be positive");
    return Decibel{10.0 * std::log10(linear)};
}

std::uint64_t RngStream::next_u64() {
    // Counter-based: draw i is mix64(key + (i+1)*golden), i.e. the SplitMix64
    // sequence seeded at the stream key. Random access by counter.
    ++counter;
    return mix64(stream_key(*this) + counter * kGolden);
}

double RngStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

cxd RngStream::next_cn(double p) {
    if (!(p >= 0.0))
        throw std::invalid_argument("next_cn: variance must be non-negative");
    // Box-Muller; u1 shifted into (0, 1] so log stays finite.
    const double u1 = 1.0 - next_uniform();
    const double u2 = next_uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    const double scale = std::sqrt(p / 2.0);
    return {rad * std::cos(ang) * scale, rad * std::sin(ang) * scale};
}

RngStream derive_stream(std::uint64_t master_seed, std::string_view label) {
    return RngStream{master_seed, fnv1a64(label), 0};
}

RngStream derive_stream(std::uint64_t master_seed, std::string_view label,
                        std::uint64_t index) {
    return derive_substream(derive_stream(master_seed, label), index);
}

RngStream derive_substream(const RngStream& parent, std::uint64_t index) {
    // Children live in a key space disjoint from plain labels with high
    // probability (bijective remix of id + index).
    return RngStream{parent.master_seed,
                     mix64(parent.stream_id + kGolden * (index + 1)) ^ kGolden,
                     0};
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(threads, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int b = 0; b < workers; ++b) {
        const int lo = static_cast<int>(static_cast<long long>(n) * b / workers);
        const int hi =
            static_cast<int>(static_cast<long long>(n) * (b + 1) / workers);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace z3ro
