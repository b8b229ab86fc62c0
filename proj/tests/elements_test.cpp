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
#include <memory>

#include "wamp/elements.hpp"
#include "wamp/error.hpp"

using namespace wamp;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

RegistryPtr ports_registry(std::initializer_list<Port> ports) {
    auto registry = std::make_shared<ModeRegistry>();
    for (const auto &p : ports) {
        for (auto sub : kAllSublabels) {
            registry->register_mode(p.with(sub));
        }
    }
    return registry;
}

ModeIndex idx(const RegistryPtr &registry, Port port, Sublabel sub) {
    return *registry->find(port.with(sub));
}

const Port a1{0, Channel::A1}, a2{0, Channel::A2}, a3{0, Channel::A3}, a4{0, Channel::A4},
    a5{0, Channel::A5}, a6{0, Channel::A6}, out{0, Channel::Out};

} // namespace

TEST_CASE("element matrices") {
    const auto bs = bs5050_matrix();
    CHECK(is_unitary(bs));
    CHECK(bs[0][0] == Amplitude{kR, 0.0});
    CHECK(bs[0][1] == Amplitude{kR, 0.0});
    CHECK(bs[1][0] == Amplitude{kR, 0.0});
    CHECK(bs[1][1] == Amplitude{-kR, 0.0});
    for (double t : {0.01, 0.25, 0.5, 0.9}) {
        const auto v = vbs_matrix(t);
        CHECK(is_unitary(v));
        CHECK(v[0][0].real() == doctest::Approx(std::sqrt(t)));
        CHECK(v[1][0].real() == doctest::Approx(std::sqrt(1.0 - t)));
    }
}

TEST_CASE("50:50 splitter maps each input onto both outputs with the agreed signs") {
    auto reg = ports_registry({a1, a2, a3, a4});
    for (auto sub : {kShortH, kLongV}) {
        const auto from1 = FockState::basis(reg, OccupationVector::of({idx(reg, a1, sub)}));
        const auto o1 = apply_bs5050(from1, a1, a2, a3, a4);
        CHECK(std::abs(o1.amplitude(OccupationVector::of({idx(reg, a3, sub)})) - kR) < 1e-15);
        CHECK(std::abs(o1.amplitude(OccupationVector::of({idx(reg, a4, sub)})) - kR) < 1e-15);

        const auto from2 = FockState::basis(reg, OccupationVector::of({idx(reg, a2, sub)}));
        const auto o2 = apply_bs5050(from2, a1, a2, a3, a4);
        CHECK(std::abs(o2.amplitude(OccupationVector::of({idx(reg, a3, sub)})) - kR) < 1e-15);
        CHECK(std::abs(o2.amplitude(OccupationVector::of({idx(reg, a4, sub)})) + kR) < 1e-15);
    }
}

TEST_CASE("photons of different sublabels do not interfere") {
    auto reg = ports_registry({a1, a2, a3, a4});
    const auto in = FockState::basis(
        reg, OccupationVector::of({idx(reg, a1, kShortH), idx(reg, a2, kLongV)}));
    const auto o = apply_bs5050(in, a1, a2, a3, a4);
    CHECK(o.size() == 4);
    for (const auto &[occ, amp] : o.terms()) {
        CHECK(std::norm(amp) == doctest::Approx(0.25));
    }
}

TEST_CASE("variable splitter keeps sqrt(t) and sends sqrt(1-t) out") {
    auto reg = ports_registry({a2, out});
    const double t = 0.3;
    const auto in = FockState::basis(reg, OccupationVector::of({idx(reg, a2, kShortH)}));
    const auto o = apply_vbs(in, a2, a2, out, t);
    CHECK(std::abs(o.amplitude(OccupationVector::of({idx(reg, a2, kShortH)})) -
                   std::sqrt(t)) < 1e-15);
    CHECK(std::abs(o.amplitude(OccupationVector::of({idx(reg, out, kShortH)})) -
                   std::sqrt(1.0 - t)) < 1e-15);
    CHECK_THROWS_AS((void)apply_vbs(in, a2, a2, out, 0.0), Error);
    CHECK_THROWS_AS((void)apply_vbs(in, a2, a2, out, 1.0), Error);
}

TEST_CASE("variable splitter on the auxiliary pair") {
    auto reg = ports_registry({a2, out});
    const double t = 0.25;
    const auto in = FockState::basis(
        reg, OccupationVector::of({idx(reg, a2, kShortH), idx(reg, a2, kLongV)}));
    const auto o = apply_vbs(in, a2, a2, out, t);
    CHECK(o.size() == 4);
    CHECK(std::abs(o.amplitude(OccupationVector::of(
                       {idx(reg, a2, kShortH), idx(reg, a2, kLongV)})) -
                   t) < 1e-15);
    CHECK(std::abs(o.amplitude(OccupationVector::of(
                       {idx(reg, out, kShortH), idx(reg, out, kLongV)})) -
                   (1.0 - t)) < 1e-15);
    CHECK(squared_norm(o) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("polarizing splitter routes by polarization") {
    auto reg = ports_registry({a3, a5, a6});
    const auto in = FockState::basis(
        reg, OccupationVector::of({idx(reg, a3, kShortH), idx(reg, a3, kLongV)}));
    const auto o = apply_pbs(in, a3, a5, a6);
    CHECK(o.size() == 1);
    CHECK(o.amplitude(OccupationVector::of({idx(reg, a5, kShortH), idx(reg, a6, kLongV)})) ==
          Amplitude{1.0, 0.0});
}

TEST_CASE("unregistered outputs are rejected") {
    auto reg = ports_registry({a1, a2});
    const auto in = FockState::basis(reg, OccupationVector::of({idx(reg, a1, kShortH)}));
    try {
        (void)apply_bs5050(in, a1, a2, a3, a4);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::UnregisteredMode);
    }
}

TEST_CASE("elements act branch-wise on ensembles") {
    auto reg = ports_registry({a1, a2, a3, a4});
    const auto photon = FockState::basis(reg, OccupationVector::of({idx(reg, a1, kShortH)}));
    const auto mix = apply_loss_channel(photon, 0.7);
    const Element bs{ElementKind::BS5050, {a1, a2}, {a3, a4}};
    const auto out_mix = apply_element(mix, bs);
    REQUIRE(out_mix.branches().size() == 2);
    CHECK(out_mix.find(BranchKind::Signal)->weight == doctest::Approx(0.7));
    CHECK(out_mix.find(BranchKind::Signal)->state.size() == 2);
    CHECK(out_mix.find(BranchKind::Vacuum)->state.size() == 1);
}

TEST_CASE("loss channel") {
    auto reg = ports_registry({a1});
    const auto photon = FockState::basis(reg, OccupationVector::of({idx(reg, a1, kShortH)}));
    const auto mix = apply_loss_channel(photon, 0.6);
    CHECK(mix.branches().size() == 2);
    CHECK(mix.find(BranchKind::Signal)->weight == doctest::Approx(0.6));
    CHECK(mix.find(BranchKind::Vacuum)->weight == doctest::Approx(0.4));
    CHECK(apply_loss_channel(photon, 1.0).branches().size() == 1);
    CHECK(apply_loss_channel(photon, 0.0).find(BranchKind::Signal) == nullptr);
    CHECK_THROWS_AS(apply_loss_channel(photon, 1.5), Error);
    CHECK_THROWS_AS(apply_loss_channel(photon.scaled(2.0), 0.5), Error);
}

TEST_CASE("ensemble validation") {
    auto reg = ports_registry({a1});
    const auto vac = FockState::vacuum(reg);
    CHECK_NOTHROW(Ensemble({{1.0, vac, BranchKind::Vacuum}}));
    CHECK_THROWS_AS(Ensemble({{0.5, vac, BranchKind::Vacuum}}), Error);
    CHECK_THROWS_AS(Ensemble({{1.0, vac.scaled(2.0), BranchKind::Vacuum}}), Error);
    CHECK_THROWS_AS(Ensemble({{1.5, vac, BranchKind::Vacuum}, {-0.5, vac, BranchKind::Other}}),
                    Error);
    CHECK(Ensemble().empty());
}
