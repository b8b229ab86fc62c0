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

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "wamp/elements.hpp"
#include "wamp/error.hpp"
#include "wamp/fock.hpp"

using namespace wamp;
using wamp::testing::line_registry;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected wamp::Error");
    return ErrorCode::Io;
}

} // namespace

TEST_CASE("occupation vector packs counts per mode") {
    OccupationVector occ;
    CHECK(occ.empty());
    occ.set(0, 2);
    occ.set(17, 1);
    occ.set(127, 4);
    CHECK(occ.count(0) == 2);
    CHECK(occ.count(17) == 1);
    CHECK(occ.count(127) == 4);
    CHECK(occ.count(5) == 0);
    CHECK(occ.total() == 7);
    CHECK(occ.occupied_modes() == std::vector<ModeIndex>{0, 17, 127});
    occ.set(17, 0);
    CHECK(occ.total() == 6);
    CHECK(OccupationVector::of({3, 3, 5}).count(3) == 2);
    CHECK(code_of([] { OccupationVector().set(0, kMaxOccupancy + 1); }) ==
          ErrorCode::OccupancyOverflow);
    CHECK(code_of([] { OccupationVector().set(kMaxModes, 1); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("merged adds disjoint occupations") {
    const auto a = OccupationVector::of({0, 1});
    const auto b = OccupationVector::of({2});
    CHECK(a.merged(b) == OccupationVector::of({0, 1, 2}));
}

TEST_CASE("registry is idempotent and bounded") {
    ModeRegistry registry;
    const ModeLabel l{1, Channel::A3, TimeBin::Long, Polarization::V};
    const auto i = registry.register_mode(l);
    CHECK(registry.register_mode(l) == i);
    CHECK(registry.size() == 1);
    CHECK(registry.find(l) == i);
    CHECK_FALSE(registry.find({1, Channel::A4, TimeBin::Long, Polarization::V}).has_value());
    CHECK(to_string(l) == "L_V@b3");
    for (std::uint16_t k = 0; registry.size() < kMaxModes; ++k) {
        registry.register_mode({k, Channel::Out, TimeBin::Short, Polarization::H});
    }
    CHECK(code_of([&] {
              registry.register_mode({999, Channel::Out, TimeBin::Short, Polarization::H});
          }) == ErrorCode::InvalidArgument);
}

TEST_CASE("port and label names") {
    CHECK(to_string(Port{0, Channel::A1}) == "a1");
    CHECK(to_string(Port{2, Channel::Out}) == "out3");
}

TEST_CASE("basic state algebra") {
    auto reg = line_registry(3);
    const auto s1 = FockState::basis(reg, OccupationVector::of({0}));
    const auto s2 = FockState::basis(reg, OccupationVector::of({1}), Amplitude{0.0, 1.0});
    const auto sum = s1.plus(s2);
    CHECK(squared_norm(sum) == doctest::Approx(2.0).epsilon(1e-15));
    const auto n = sum.normalized();
    CHECK(squared_norm(n) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(inner_product(s1, n) - Amplitude{kR, 0.0}) < 1e-15);
    CHECK(std::abs(inner_product(s2, n) - Amplitude{kR, 0.0}) < 1e-15);
    CHECK(fidelity(s1, s2) == 0.0);
    CHECK(fidelity(n, n) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity(n, n.scaled(Amplitude{0.0, -3.0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(squared_norm(FockState::zero(reg)) == 0.0);
    CHECK(squared_norm(FockState::vacuum(reg)) == 1.0);
    CHECK(FockState::zero(reg).normalized().size() == 0);
}

TEST_CASE("pruning drops tiny amplitudes only") {
    auto reg = line_registry(2);
    FockState s(reg);
    s.add(OccupationVector::of({0}), 1.0);
    s.add(OccupationVector::of({1}), 1e-16);
    CHECK(s.pruned().size() == 1);
    CHECK(s.size() == 2);
    s.prune();
    CHECK(s.size() == 1);
}

TEST_CASE("tensor requires disjoint support") {
    auto reg = line_registry(3);
    const auto a = FockState::basis(reg, OccupationVector::of({0}));
    const auto b = FockState::basis(reg, OccupationVector::of({1, 2}));
    const auto ab = tensor(a, b);
    CHECK(ab.amplitude(OccupationVector::of({0, 1, 2})) == Amplitude{1.0, 0.0});
    CHECK(code_of([&] { (void)tensor(a, a); }) == ErrorCode::OverlappingSupport);
    auto other = line_registry(3);
    CHECK(code_of([&] { (void)tensor(a, FockState::vacuum(other)); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("single photon on a 50:50 splitter") {
    auto reg = line_registry(2);
    const auto in = FockState::basis(reg, OccupationVector::of({0}));
    const auto out = apply_two_mode_unitary(in, 0, 1, bs5050_matrix());
    CHECK(std::abs(out.amplitude(OccupationVector::of({0})) - kR) < 1e-15);
    CHECK(std::abs(out.amplitude(OccupationVector::of({1})) - kR) < 1e-15);
    const auto in2 = FockState::basis(reg, OccupationVector::of({1}));
    const auto out2 = apply_two_mode_unitary(in2, 0, 1, bs5050_matrix());
    CHECK(std::abs(out2.amplitude(OccupationVector::of({0})) - kR) < 1e-15);
    CHECK(std::abs(out2.amplitude(OccupationVector::of({1})) + kR) < 1e-15);
}

TEST_CASE("Hong-Ou-Mandel: two photons always leave together") {
    auto reg = line_registry(2);
    const auto in = FockState::basis(reg, OccupationVector::of({0, 1}));
    const auto out = apply_two_mode_unitary(in, 0, 1, bs5050_matrix());
    CHECK(out.size() == 2);
    CHECK(std::abs(out.amplitude(OccupationVector::of({0, 1}))) < 1e-15);
    CHECK(std::abs(out.amplitude(OccupationVector::of({0, 0})) - kR) < 1e-15);
    CHECK(std::abs(out.amplitude(OccupationVector::of({1, 1})) + kR) < 1e-15);

    // Distinguishable photons (different modes of the same ports) do not bunch.
    auto reg4 = line_registry(4);
    const auto dist = FockState::basis(reg4, OccupationVector::of({0, 3}));
    auto mixed = apply_two_mode_unitary(dist, 0, 1, bs5050_matrix());
    mixed = apply_two_mode_unitary(mixed, 2, 3, bs5050_matrix());
    double coincidences = 0.0;
    for (const auto &[occ, amp] : mixed.terms()) {
        if (occ.count(0) + occ.count(2) == 1) {
            coincidences += std::norm(amp);
        }
    }
    CHECK(coincidences == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("two-mode unitary argument checks") {
    auto reg = line_registry(2);
    const auto in = FockState::basis(reg, OccupationVector::of({0}));
    CHECK(code_of([&] { (void)apply_two_mode_unitary(in, 0, 0, bs5050_matrix()); }) ==
          ErrorCode::InvalidArgument);
    const Matrix2 bad{{{1.0, 0.1}, {0.0, 1.0}}};
    CHECK_FALSE(is_unitary(bad));
    CHECK(code_of([&] { (void)apply_two_mode_unitary(in, 0, 1, bad); }) ==
          ErrorCode::NonUnitary);
}

TEST_CASE("moving and phasing modes") {
    auto reg = line_registry(3);
    const auto in = FockState::basis(reg, OccupationVector::of({0, 0, 1}));
    const auto moved = move_mode(in, 0, 2);
    CHECK(moved.amplitude(OccupationVector::of({1, 2, 2})) == Amplitude{1.0, 0.0});
    CHECK(code_of([&] { (void)move_mode(in, 0, 1); }) == ErrorCode::InvalidArgument);
    const auto phased = apply_mode_phase(in, 0, Amplitude{0.0, 1.0});
    CHECK(std::abs(phased.amplitude(OccupationVector::of({0, 0, 1})) + 1.0) < 1e-15);
}

TEST_CASE("projection on photon counts") {
    auto reg = line_registry(3);
    FockState s(reg);
    s.add(OccupationVector::of({0, 2}), 0.6);
    s.add(OccupationVector::of({1, 2}), Amplitude{0.0, 0.8});
    const auto hit = project_counts(s, {{0, 1}}, {0});
    CHECK(hit.probability == doctest::Approx(0.36).epsilon(1e-15));
    CHECK(std::abs(hit.conditional.amplitude(OccupationVector::of({2})) - 1.0) < 1e-15);
    const auto miss = project_counts(s, {{0, 2}}, {0});
    CHECK(miss.probability == 0.0);
    CHECK(miss.conditional.size() == 0);
    CHECK(code_of([&] { (void)project_counts(s, {{1, 1}}, {0}); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("photon number distribution") {
    auto reg = line_registry(2);
    FockState s(reg);
    s.add(OccupationVector{}, 0.6);
    s.add(OccupationVector::of({0, 1}), 0.8);
    const auto dist = photon_number_distribution(s);
    CHECK(dist.size() == 2);
    CHECK(dist.at(0) == doctest::Approx(0.36));
    CHECK(dist.at(2) == doctest::Approx(0.64));
}

TEST_CASE("ordered_sum does not depend on input order") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1e-3);
    std::vector<double> xs(5000);
    for (auto &x : xs) {
        x = u(rng);
    }
    const double ref = ordered_sum(xs);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(xs.begin(), xs.end(), rng);
        CHECK(ordered_sum(xs) == ref);
    }
}

// Property tests below draw from fixed seeds so failures are reproducible.

TEST_CASE("property: random two-mode unitaries preserve the norm") {
    auto reg = line_registry(4);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<ModeIndex> mode(0, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto u = wamp::testing::random_unitary(rng);
        REQUIRE(is_unitary(u));
        const auto psi = wamp::testing::random_state(reg, rng);
        const ModeIndex a = mode(rng);
        ModeIndex b = mode(rng);
        while (b == a) {
            b = mode(rng);
        }
        const auto out = apply_two_mode_unitary(psi, a, b, u);
        worst = std::max(worst, std::abs(squared_norm(out) - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("property: U then U-dagger restores the state") {
    auto reg = line_registry(3);
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto u = wamp::testing::random_unitary(rng);
        const auto psi = wamp::testing::random_state(reg, rng);
        const auto back =
            apply_two_mode_unitary(apply_two_mode_unitary(psi, 0, 2, u), 0, 2, adjoint(u));
        worst = std::max(worst, 1.0 - fidelity(psi, back));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("property: photon number is conserved") {
    auto reg = line_registry(4);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto u = wamp::testing::random_unitary(rng);
        const auto psi = wamp::testing::random_state(reg, rng);
        const auto before = photon_number_distribution(psi);
        const auto after = photon_number_distribution(apply_two_mode_unitary(psi, 1, 3, u));
        for (const auto &[n, p] : after) {
            REQUIRE(before.count(n) == 1);
            CHECK(std::abs(p - before.at(n)) < 1e-12);
        }
    }
}

TEST_CASE("property: unitaries act linearly") {
    auto reg = line_registry(3);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        const auto u = wamp::testing::random_unitary(rng);
        const auto a = wamp::testing::random_state(reg, rng);
        const auto b = wamp::testing::random_state(reg, rng);
        const Amplitude c{0.3, -0.4};
        const auto lhs = apply_two_mode_unitary(a.plus(b.scaled(c)), 0, 1, u);
        const auto rhs = apply_two_mode_unitary(a, 0, 1, u)
                             .plus(apply_two_mode_unitary(b, 0, 1, u).scaled(c));
        const auto diff = lhs.plus(rhs.scaled(-1.0));
        CHECK(squared_norm(diff) < 1e-24);
    }
}

TEST_CASE("property: projections over all outcomes are complete") {
    auto reg = line_registry(3);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto psi = wamp::testing::random_state(reg, rng);
        double total = 0.0;
        for (unsigned n0 = 0; n0 <= 2; ++n0) {
            for (unsigned n1 = 0; n1 <= 2; ++n1) {
                total += project_counts(psi, {{0, n0}, {1, n1}}, {0, 1}).probability;
            }
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}
