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
#include "wamp/protocol.hpp"

#include <cmath>
#include <string>

#include "wamp/error.hpp"

namespace wamp {

namespace {

constexpr std::array<Channel, 9> kPartyChannels{
    Channel::A1, Channel::A2, Channel::A3, Channel::A4, Channel::A5,
    Channel::A6, Channel::A7, Channel::A8, Channel::Out};

void register_port(ModeRegistry &registry, Port port) {
    registry.register_mode(port.with(kShortH));
    registry.register_mode(port.with(kLongV));
}

} // namespace

TimeBinQubit TimeBinQubit::make(Amplitude alpha, Amplitude beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kQubitNormTolerance) {
        fail(ErrorCode::InvalidArgument,
             "time-bin qubit is not normalized: |alpha|^2+|beta|^2 = " +
                 std::to_string(norm));
    }
    return {alpha, beta};
}

void ProtocolConfig::validate() const {
    if (n_parties < 2) {
        fail(ErrorCode::InvalidArgument, "n_parties must be at least 2");
    }
    if (n_parties > kMaxParties) {
        fail(ErrorCode::InvalidArgument,
             "n_parties exceeds " + std::to_string(kMaxParties) + " (mode capacity)");
    }
    if (!(t > 0.0 && t < 1.0)) {
        fail(ErrorCode::InvalidArgument, "t must lie in the open interval (0,1)");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "eta must lie in [0,1]");
    }
    TimeBinQubit::make(qubit.alpha, qubit.beta);
}

FockState prepare_w_state(int n, const TimeBinQubit &qubit,
                          const RegistryPtr &registry, Channel channel) {
    if (n < 1) {
        fail(ErrorCode::InvalidArgument, "W state needs at least one party");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    FockState w(registry);
    for (int k = 0; k < n; ++k) {
        const Port port{static_cast<std::uint16_t>(k), channel};
        const auto s = registry->register_mode(port.with(kShortH));
        const auto l = registry->register_mode(port.with(kLongV));
        w.add(OccupationVector::of({s}), qubit.alpha * scale);
        w.add(OccupationVector::of({l}), qubit.beta * scale);
    }
    return w.pruned();
}

FockState prepare_auxiliary_pair(std::uint16_t party, const RegistryPtr &registry) {
    const Port aux{party, Channel::A2};
    const auto s = registry->register_mode(aux.with(kShortH));
    const auto l = registry->register_mode(aux.with(kLongV));
    return FockState::basis(registry, OccupationVector::of({s, l}));
}

Circuit build_amplifier(const ProtocolConfig &cfg, AmplifierOptions options) {
    cfg.validate();
    Circuit c;
    c.registry = std::make_shared<ModeRegistry>();
    c.n_parties = cfg.n_parties;
    for (int i = 0; i < cfg.n_parties; ++i) {
        const auto p = static_cast<std::uint16_t>(i);
        for (auto ch : kPartyChannels) {
            register_port(*c.registry, Port{p, ch});
        }
        const Port a1{p, Channel::A1}, a2{p, Channel::A2}, a3{p, Channel::A3},
            a4{p, Channel::A4}, a5{p, Channel::A5}, a6{p, Channel::A6},
            a7{p, Channel::A7}, a8{p, Channel::A8}, out{p, Channel::Out};

        c.elements.push_back({ElementKind::VBS, {a2}, {a2, out}, cfg.t});
        Element bs{ElementKind::BS5050, {a1, a2}, {a3, a4}};
        bs.fault_flip_v_sign = options.fault_flip_v_sign_party0 && i == 0;
        c.elements.push_back(bs);
        c.elements.push_back({ElementKind::PBS, {a3}, {a5, a6}});
        c.elements.push_back({ElementKind::PBS, {a4}, {a7, a8}});

        c.detector_ports.insert(c.detector_ports.end(), {a5, a6, a7, a8});
        c.out_ports.push_back(out);
    }
    return c;
}

FockState run_circuit(const FockState &state, const Circuit &circuit) {
    if (state.registry() != circuit.registry) {
        fail(ErrorCode::InvalidArgument, "state is not defined over the circuit registry");
    }
    FockState s = state;
    for (const auto &element : circuit.elements) {
        s = apply_element(s, element);
    }
    return s;
}

Ensemble run_circuit(const Ensemble &ensemble, const Circuit &circuit) {
    std::vector<Ensemble::Branch> out;
    out.reserve(ensemble.branches().size());
    for (const auto &b : ensemble.branches()) {
        out.push_back({b.weight, run_circuit(b.state, circuit), b.kind});
    }
    return Ensemble(std::move(out));
}

Ensemble prepare_input(const ProtocolConfig &cfg, const Circuit &circuit) {
    cfg.validate();
    if (cfg.n_parties != circuit.n_parties) {
        fail(ErrorCode::InvalidArgument, "config and circuit disagree on party count");
    }
    const auto &reg = circuit.registry;
    FockState aux = FockState::vacuum(reg);
    for (int i = 0; i < cfg.n_parties; ++i) {
        aux = tensor(aux, prepare_auxiliary_pair(static_cast<std::uint16_t>(i), reg));
    }
    FockState signal = tensor(prepare_w_state(cfg.n_parties, cfg.qubit, reg), aux);
    return Ensemble({{cfg.eta, std::move(signal), BranchKind::Signal},
                     {1.0 - cfg.eta, std::move(aux), BranchKind::Vacuum}});
}

} // namespace wamp
