// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/precoder.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "golden_gain_profile.hpp"

using namespace z3ro;

namespace {

ChannelVector real_channel(const double* r, int M) {
    ComplexVec h(M);
    for (int m = 0; m < M; ++m) h[m] = cxd{r[m], 0.0};
    return explicit_channel(std::move(h));
}

double unit_power_error(const ComplexVec& w) {
    double p = 0.0;
    for (const cxd& v : w) p += std::norm(v);
    return std::abs(p - 1.0);
}

} // namespace

TEST_CASE("mrt matches the conjugate channel") {
    const ChannelVector h =
        explicit_channel({{1.0, 1.0}, {0.0, -2.0}, {0.5, 0.0}});
    const Precoder p = mrt(h);
    CHECK(p.kind == PrecoderKind::Mrt);
    CHECK(p.saturated_set.empty());
    CHECK(unit_power_error(p.w) < 1e-14);
    // Array gain equals the channel energy.
    CHECK(array_gain(h, p.w) == doctest::Approx(1.0 + 1.0 + 4.0 + 0.25));
    cxd resp{0.0, 0.0};
    for (int m = 0; m < 3; ++m) resp += h.h[m] * p.w[m];
    CHECK(resp.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(resp.real() > 0.0);

    CHECK_THROWS_AS(mrt(explicit_channel({{0.0, 0.0}})), std::domain_error);
}

TEST_CASE("heuristic gains scale with the channel and null the residual") {
    const double r[3] = {1.0, 1.0, 2.0};
    const ChannelVector h = real_channel(r, 3);
    const Precoder p = z3ro_heuristic(h, {0});
    CHECK(p.kind == PrecoderKind::Z3roHeuristic);
    CHECK(p.saturated_set == std::vector<int>{0});
    CHECK(unit_power_error(p.w) < 1e-14);
    CHECK(std::abs(distortion_residual(h, p.w)) < 1e-14);

    // gamma = ((1 + 16) / 1)^(1/3); gains proportional to (-gamma, 1, 2).
    const double gamma = std::cbrt(17.0);
    const double norm = std::sqrt(gamma * gamma + 1.0 + 4.0);
    CHECK(p.w[0].real() == doctest::Approx(-gamma / norm).epsilon(1e-14));
    CHECK(p.w[1].real() == doctest::Approx(1.0 / norm).epsilon(1e-14));
    CHECK(p.w[2].real() == doctest::Approx(2.0 / norm).epsilon(1e-14));
}

TEST_CASE("heuristic rejects invalid saturated sets") {
    const double r[5] = {1.0, 0.9, 1.1, 1.2, 0.8};
    const ChannelVector h = real_channel(r, 5);
    CHECK_THROWS_AS(z3ro_heuristic(h, {}), std::invalid_argument);
    CHECK_THROWS_AS(z3ro_heuristic(h, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(z3ro_heuristic(h, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(z3ro_heuristic(h, {5}), std::invalid_argument);
    CHECK_THROWS_AS(z3ro_heuristic(h, {-1}), std::invalid_argument);

    const ChannelVector zero =
        explicit_channel({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(z3ro_heuristic(zero, {1}), std::domain_error);
}

TEST_CASE("default saturated set tracks the median gain") {
    const double r[5] = {0.1, 0.5, 0.9, 1.3, 0.6};
    const ChannelVector h = real_channel(r, 5);
    CHECK(default_saturated_set(h, 1) == std::vector<int>{4});
    CHECK(default_saturated_set(h, 2) == std::vector<int>{1, 4});

    // Even M: the median is the average of the two middle gains, and exact
    // distance ties resolve toward the smaller index.
    const double even[4] = {1.0, 2.0, 3.0, 4.0};
    const ChannelVector he = real_channel(even, 4);
    CHECK(default_saturated_set(he, 1) == std::vector<int>{1});
}

TEST_CASE("constant-gain critical point has one scaled negative block") {
    const Precoder p = los_critical_point(9, 1, 1.0);
    CHECK(p.kind == PrecoderKind::LosCritical);
    CHECK(p.saturated_set == std::vector<int>{0});
    CHECK(unit_power_error(p.w) < 1e-14);
    const double norm = std::sqrt(12.0); // (-2)^2 + 8 ones
    CHECK(p.w[0].real() == doctest::Approx(-2.0 / norm).epsilon(1e-14));
    for (int m = 1; m < 9; ++m) {
        CHECK(p.w[m].real() == doctest::Approx(1.0 / norm).epsilon(1e-14));
        CHECK(p.w[m].imag() == 0.0);
    }

    // Half-saturated boundary point: zero array response by symmetry.
    const Precoder half = los_critical_point(4, 2, 1.0);
    const double unit[4] = {1.0, 1.0, 1.0, 1.0};
    const ChannelVector ones = real_channel(unit, 4);
    CHECK(array_gain(ones, half.w) < 1e-25);
    CHECK(std::abs(distortion_residual(ones, half.w)) < 1e-14);

    CHECK_THROWS_AS(los_critical_point(9, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(los_critical_point(9, 5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(los_critical_point(1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("re-phasing keeps magnitudes and the null on the target channel") {
    const ChannelVector los = los_ula(9, 2.0, 1.0, 0.5);
    const Precoder base = los_critical_point(9, 1, 2.0);
    const Precoder ported = with_channel_phases(base, los);
    CHECK(unit_power_error(ported.w) < 1e-14);
    CHECK(std::abs(distortion_residual(los, ported.w)) < 1e-13);
    for (int m = 0; m < 9; ++m) {
        CHECK(std::abs(ported.w[m]) ==
              doctest::Approx(std::abs(base.w[m])).epsilon(1e-14));
    }
    cxd resp{0.0, 0.0};
    for (int m = 0; m < 9; ++m) resp += los.h[m] * ported.w[m];
    CHECK(resp.imag() == doctest::Approx(0.0).epsilon(1e-12));

    // Re-phasing is only defined for real-gain precoders.
    CHECK_THROWS_AS(with_channel_phases(ported, los), std::invalid_argument);
}

TEST_CASE("xi line search reproduces the constant-gain closed form") {
    for (int M : {3, 9, 33}) {
        const std::vector<double> r(M, 1.0);
        const LineSearchResult ls = theorem1_xi_solve(r, 0);
        CHECK(ls.feasible);
        CHECK(ls.iterations > 0);
        const double c = std::cbrt(static_cast<double>(M - 1));
        const double u = (c + 1.0) / (c - 1.0);
        const double xi = u * u - 1.0;
        CHECK(ls.xi == doctest::Approx(xi).epsilon(1e-9));
        CHECK(std::abs(ls.residual) < 1e-9);
    }
}

TEST_CASE("xi line search flags a dominant saturated antenna") {
    const LineSearchResult ls = theorem1_xi_solve({10.0, 1.0, 1.0}, 0);
    CHECK(!ls.feasible);
    const auto cand = theorem1_max(
        explicit_channel({{10.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}), 0);
    CHECK(!cand.has_value());
}

TEST_CASE("candidate maximum on a constant-gain channel is the closed form") {
    const std::vector<double> ones(9, 1.0);
    const ChannelVector h = real_channel(ones.data(), 9);
    const auto cand = theorem1_max(h, 0);
    REQUIRE(cand.has_value());
    CHECK(cand->kind == PrecoderKind::Theorem1Max);
    CHECK(cand->xi.has_value());
    CHECK(*cand->xi == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(unit_power_error(cand->w) < 1e-13);
    CHECK(std::abs(distortion_residual(h, cand->w)) < 1e-12);
    CHECK(array_gain(h, cand->w) == doctest::Approx(3.0).epsilon(1e-12));

    const Precoder ref = los_critical_point(9, 1, 1.0);
    for (int m = 0; m < 9; ++m) {
        CHECK(std::abs(cand->w[m] - ref.w[m]) < 1e-9);
    }
}

TEST_CASE("fixed fading profile reproduces the reference gain curves") {
    const ChannelVector h = real_channel(golden::kGainProfile, 64);
    double best = -1e300;
    for (int m = 0; m < 64; ++m) {
        const auto cand = theorem1_max(h, m);
        REQUIRE(cand.has_value());
        const double t_db = 10.0 * std::log10(array_gain(h, cand->w));
        CHECK(std::abs(t_db - golden::kCandidateGainDb[m]) < 1e-6);
        best = std::max(best, t_db);

        int negatives = 0;
        for (int k = 0; k < 64; ++k) negatives += cand->w[k].real() < 0.0;
        CHECK(negatives == 1);

        const Precoder heur = z3ro_heuristic(h, {m});
        const double z_db = 10.0 * std::log10(array_gain(h, heur.w));
        CHECK(std::abs(z_db - golden::kHeuristicGainDb[m]) < 1e-8);
    }

    const Precoder global = theorem1_global(h);
    const double g_db = 10.0 * std::log10(array_gain(h, global.w));
    CHECK(std::abs(g_db - best) < 1e-12);
    CHECK(std::abs(g_db - 14.7559449035386) < 1e-6);
}

TEST_CASE("global candidate search throws when nothing is feasible") {
    // Equal magnitudes on two antennas leave no sign change in the bracket
    // for either saturated choice.
    const ChannelVector h = explicit_channel({{1.0, 0.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(theorem1_global(h), std::domain_error);
    // Distinct magnitudes admit exactly one candidate: saturate the weaker.
    const ChannelVector ok = explicit_channel({{1.0, 0.0}, {20.0, 0.0}});
    const Precoder p = theorem1_global(ok);
    CHECK(p.saturated_set == std::vector<int>{0});
    CHECK(std::abs(distortion_residual(ok, p.w)) < 1e-10);
}

TEST_CASE("per-antenna phase rotations do not change the construction") {
    const ChannelVector base =
        iid_rayleigh(8, 1.0, derive_stream(21, "phase"));
    ComplexVec rotated = base.h;
    RngStream rng = derive_stream(21, "rot");
    for (auto& v : rotated) {
        v *= std::polar(1.0, 6.28 * rng.next_uniform());
    }
    const ChannelVector twisted = explicit_channel(rotated);

    const Precoder a = theorem1_global(base);
    const Precoder b = theorem1_global(twisted);
    CHECK(a.saturated_set == b.saturated_set);
    CHECK(array_gain(base, a.w) ==
          doctest::Approx(array_gain(twisted, b.w)).epsilon(1e-12));
    for (int m = 0; m < 8; ++m) {
        CHECK(std::abs(a.w[m]) == doctest::Approx(std::abs(b.w[m])).epsilon(1e-12));
    }
    CHECK(std::abs(distortion_residual(twisted, b.w)) < 1e-13);
}

TEST_CASE("precoder csv lists one row per antenna") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "z3ro-ut-precoder.csv";
    const ChannelVector h = real_channel(golden::kGainProfile, 64);
    save_precoder_csv(path, z3ro_heuristic(h, {31}));
    std::ifstream in(path, std::ios::binary);
    std::string line;
    int rows = 0;
    REQUIRE(std::getline(in, line));
    CHECK(line == "index,re,im,is_saturated\r");
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 64);
    fs::remove(path);
}
