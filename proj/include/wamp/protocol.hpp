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
#pragma once

#include <cstdint>
#include <vector>

#include "wamp/elements.hpp"
#include "wamp/fock.hpp"

namespace wamp {

/// alpha|S_H> + beta|L_V>
struct TimeBinQubit {
    Amplitude alpha{1.0 / 1.4142135623730951, 0.0};
    Amplitude beta{1.0 / 1.4142135623730951, 0.0};

    /// Throws if |alpha|^2 + |beta|^2 differs from 1 by more than 1e-9.
    /// Inputs are never renormalized.
    static TimeBinQubit make(Amplitude alpha, Amplitude beta);
};

inline constexpr double kQubitNormTolerance = 1e-9;

/// Each party registers 18 modes (9 channels x 2 sublabels).
inline constexpr int kModesPerParty = 18;
inline constexpr int kMaxParties = static_cast<int>(kMaxModes) / kModesPerParty;

struct ProtocolConfig {
    int n_parties = 3;
    double t = 0.25;
    double eta = 0.6;
    TimeBinQubit qubit{};

    void validate() const;
};

/// Fault switches for negative-control runs. Never set outside tests.
struct AmplifierOptions {
    bool fault_flip_v_sign_party0 = false;
};

struct Circuit {
    RegistryPtr registry;
    int n_parties = 0;
    std::vector<Element> elements;
    /// Four per party, ordered D1..D4 = i5, i6, i7, i8.
    std::vector<Port> detector_ports;
    /// out1..outN
    std::vector<Port> out_ports;
};

/// (1/sqrt n) sum_k |psi> on party k's `channel`, vacuum elsewhere.
FockState prepare_w_state(int n, const TimeBinQubit &qubit,
                          const RegistryPtr &registry, Channel channel = Channel::A1);

/// |S_H> (x) |L_V> on the party's auxiliary channel.
FockState prepare_auxiliary_pair(std::uint16_t party, const RegistryPtr &registry);

/// Per party i, in order: VBS(i2 -> i2, out_i), BS(i1, i2 -> i3, i4),
/// PBS(i3 -> i5, i6), PBS(i4 -> i7, i8). All modes are registered up front.
Circuit build_amplifier(const ProtocolConfig &cfg, AmplifierOptions options = {});

FockState run_circuit(const FockState &state, const Circuit &circuit);
Ensemble run_circuit(const Ensemble &ensemble, const Circuit &circuit);

/// rho_in (x) auxiliary pairs of every party. Both the signal and the vacuum
/// branch are always present (weights eta and 1-eta, possibly zero) so the
/// heralding statistics of both are available at the endpoints of eta.
Ensemble prepare_input(const ProtocolConfig &cfg, const Circuit &circuit);

} // namespace wamp
