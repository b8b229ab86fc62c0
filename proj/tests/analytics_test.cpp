// Copyright 2026 The wamp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <cmath>

#include "wamp/analytics.hpp"
#include "wamp/error.hpp"

using namespace wamp;

TEST_CASE("closed forms at hand-checked points") {
    CHECK(p1_analytic(0.5, 3) == 1.0 / 64);
    CHECK(p2_analytic(0.5, 3) == 1.0 / 64);
    CHECK(p1_analytic(0.25, 3) == doctest::Approx(std::pow(0.25, 5) * 0.75));
    CHECK(p2_analytic(0.25, 2) == doctest::Approx(std::pow(0.25, 4)));
    CHECK(eta_prime_analytic(0.2, 0.25) == doctest::Approx(3.0 / 7.0));
    CHECK(eta_prime_analytic(0.6, 0.25) == doctest::Approx(0.45 / 0.55));
    CHECK(gain_analytic(0.2, 0.25) == doctest::Approx(15.0 / 7.0));
    CHECK(p_total_analytic(0.6, 0.25, 3) == doctest::Approx(0.000537109375).epsilon(1e-14));
    CHECK(eta_prime_analytic(0.0, 0.3) == 0.0);
    CHECK(eta_prime_analytic(1.0, 0.3) == 1.0);
    CHECK_THROWS_AS(gain_analytic(0.0, 0.3), Error);
    CHECK_THROWS_AS(p_total_analytic(0.5, 0.3, 1), Error);
    CHECK_THROWS_AS(eta_prime_analytic(1.2, 0.3), Error);
}

TEST_CASE("gain curves") {
    const auto grid = make_grid(0.01, 0.99, 0.01);
    for (double eta : {0.2, 0.6, 0.8}) {
        CHECK(std::abs(gain_analytic(eta, 0.5) - 1.0) < 1e-15);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(gain_analytic(eta, grid[i]) < gain_analytic(eta, grid[i - 1]));
        }
        CHECK(gain_limit_low_t(eta) == doctest::Approx(1.0 / eta));
        CHECK(gain_limit_high_t(eta) == 0.0);
        CHECK(std::abs(gain_analytic(eta, 1e-3) * eta - 1.0) < 0.01);
    }
    CHECK(gain_limit_high_t(1.0) == 1.0);
}

TEST_CASE("total success probability") {
    for (int n : {3, 4}) {
        for (double eta : {0.2, 0.6, 0.8}) {
            CHECK(p_total_analytic(eta, 0.5, n) == std::pow(0.5, 2 * n));
            for (double t : make_grid(0.01, 0.99, 0.01)) {
                CHECK(p_total_analytic(eta, t, n + 1) < p_total_analytic(eta, t, n));
            }
        }
    }
}

TEST_CASE("iterating the amplifier") {
    CHECK(iterate_eta_prime(0.3, 0.2, 0) == 0.3);
    CHECK(iterate_eta_prime(0.0, 0.2, 5) == 0.0);
    CHECK(iterate_eta_prime(1.0, 0.2, 5) == 1.0);
    CHECK(iterate_eta_prime(0.3, 0.5, 5) == doctest::Approx(0.3));
    double previous = 0.3;
    for (int k = 1; k <= 5; ++k) {
        const double e = iterate_eta_prime(0.3, 0.2, k);
        CHECK(e > previous);
        previous = e;
    }
    CHECK_THROWS_AS(iterate_eta_prime(0.3, 0.2, -1), Error);
}

TEST_CASE("grids are computed by index") {
    const auto g = make_grid(0.01, 0.99, 0.01);
    CHECK(g.size() == 99);
    CHECK(g.front() == 0.01);
    CHECK(std::abs(g.back() - 0.99) < 1e-12);
    CHECK(g[49] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(make_grid(0.5, 0.5, 0.1).size() == 1);
    CHECK_THROWS_AS(make_grid(0.1, 0.0, 0.1), Error);
    CHECK_THROWS_AS(make_grid(0.1, 0.2, 0.0), Error);
}

TEST_CASE("sweep row order and sources") {
    SweepRequest req{{2, 3}, {0.2, 0.5}, {0.6, 0.2}, true, 1};
    const auto rows = sweep(req);
    REQUIRE(rows.size() == 2 * 2 * 2 * 2);
    std::size_t i = 0;
    for (int n : {2, 3}) {
        for (double eta : {0.6, 0.2}) {
            for (double t : {0.2, 0.5}) {
                for (auto source : {RowSource::Analytic, RowSource::Simulated}) {
                    const auto &r = rows[i++];
                    CHECK(r.n == n);
                    CHECK(r.eta == eta);
                    CHECK(r.t == t);
                    CHECK(r.source == source);
                }
            }
        }
    }
    for (std::size_t k = 0; k < rows.size(); k += 2) {
        const auto &a = rows[k];
        const auto &s = rows[k + 1];
        CHECK(std::abs(a.p1 - s.p1) < 1e-9);
        CHECK(std::abs(a.p2 - s.p2) < 1e-9);
        CHECK(std::abs(a.p_total - s.p_total) < 1e-9);
        CHECK(std::abs(a.eta_prime - s.eta_prime) < 1e-9);
        CHECK(std::abs(a.gain - s.gain) < 1e-9);
    }
}

TEST_CASE("sweep output is independent of the worker count") {
    SweepRequest one{{2, 3}, {0.1, 0.3, 0.5, 0.7}, {0.2, 0.8}, true, 1};
    SweepRequest many = one;
    many.workers = 4;
    const auto a = sweep(one);
    const auto b = sweep(many);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].p1 == b[i].p1);
        CHECK(a[i].p_total == b[i].p_total);
        CHECK(a[i].eta_prime == b[i].eta_prime);
        CHECK(a[i].gain == b[i].gain);
    }
}

TEST_CASE("sweep input checks") {
    CHECK_THROWS_AS(sweep({{}, {0.5}, {0.5}, false, 1}), Error);
    CHECK_THROWS_AS(sweep({{3}, {}, {0.5}, false, 1}), Error);
    CHECK_THROWS_AS(sweep({{3}, {0.5}, {}, false, 1}), Error);
    CHECK_THROWS_AS(sweep({{1}, {0.5}, {0.5}, false, 1}), Error);
    CHECK_THROWS_AS(sweep({{3}, {1.0}, {0.5}, false, 1}), Error);
    CHECK_THROWS_AS(sweep({{3}, {0.5}, {0.0}, false, 1}), Error);
    const auto clamped = sweep({{3}, {1e-6}, {0.5}, false, 1});
    CHECK(clamped.front().t == kSweepTMin);
}

TEST_CASE("simulation resolution limit") {
    CHECK(simulation_resolves(0.01, 3));
    CHECK(simulation_resolves(kSweepTMin, 2));
    CHECK_FALSE(simulation_resolves(kSweepTMin, 5));
}
