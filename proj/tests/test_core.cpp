// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/core.hpp"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

using namespace z3ro;

TEST_CASE("decibel conversions round-trip") {
    CHECK(db_to_linear({10.0}) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(db_to_linear({0.0}) == doctest::Approx(1.0));
    CHECK(db_to_linear({-3.0}) ==
          doctest::Approx(0.5011872336272722).epsilon(1e-12));
    for (double x : {-40.0, -3.0, 0.0, 0.1, 26.0, 90.0}) {
        CHECK(linear_to_db(db_to_linear({x})).value_db ==
              doctest::Approx(x).epsilon(1e-12));
    }
    CHECK_THROWS_AS(linear_to_db(0.0), std::invalid_argument);
    CHECK_THROWS_AS(linear_to_db(-1.0), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and counter-based") {
    RngStream a = derive_stream(42, "test");
    RngStream b = derive_stream(42, "test");
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c = derive_stream(42, "test");
    RngStream d = derive_stream(42, "other");
    CHECK(c.next_u64() != d.next_u64());

    RngStream e = derive_stream(7, "test");
    CHECK(derive_stream(42, "test").next_u64() != e.next_u64());
}

TEST_CASE("copied streams replay the identical sequence") {
    RngStream a = derive_stream(1, "replay");
    a.next_u64();
    a.next_u64();
    RngStream b = a;
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("indexed and child streams are distinct") {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t i = 0; i < 64; ++i) {
        firsts.insert(derive_stream(9, "sweep", i).next_u64());
    }
    CHECK(firsts.size() == 64);

    RngStream parent = derive_stream(9, "parent");
    std::set<std::uint64_t> children;
    for (std::uint64_t i = 0; i < 64; ++i) {
        children.insert(derive_substream(parent, i).next_u64());
    }
    CHECK(children.size() == 64);
    CHECK(firsts != children);
}

TEST_CASE("uniform draws live in [0,1) with the right mean") {
    RngStream s = derive_stream(3, "uniform");
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = s.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("complex gaussian draws have the requested power") {
    RngStream s = derive_stream(4, "cn");
    const double p = 2.5;
    double power = 0.0;
    cxd mean{0.0, 0.0};
    for (int i = 0; i < 50000; ++i) {
        const cxd z = s.next_cn(p);
        power += std::norm(z);
        mean += z;
    }
    power /= 50000;
    mean /= 50000.0;
    CHECK(power == doctest::Approx(p).epsilon(0.03));
    CHECK(std::abs(mean) < 0.05);
    CHECK(s.next_cn(0.0) == cxd{0.0, 0.0});
    CHECK_THROWS_AS(s.next_cn(-1.0), std::invalid_argument);
}

TEST_CASE("parallel_for matches serial execution for any thread count") {
    const int n = 1000;
    std::vector<double> serial(n), parallel(n);
    parallel_for(n, 1, [&](int i) { serial[i] = std::sqrt(i) + i; });
    for (int threads : {2, 3, 8}) {
        parallel_for(n, threads, [&](int i) { parallel[i] = std::sqrt(i) + i; });
        CHECK(serial == parallel);
    }
    parallel_for(0, 4, [&](int) { CHECK(false); });
}

TEST_CASE("format_double is shortest-round-trip with a dot separator") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-2.25) == "-2.25");
    for (double v : {0.1, 1.0 / 3.0, 12345.6789, -9.87e-12, 48.610496265063034}) {
        CHECK(std::stod(format_double(v)) == v);
        CHECK(format_double(v).find(',') == std::string::npos);
    }
}
