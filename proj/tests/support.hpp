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

#include <cmath>
#include <memory>
#include <random>

#include "wamp/fock.hpp"

namespace wamp::testing {

inline RegistryPtr line_registry(std::size_t modes) {
    auto registry = std::make_shared<ModeRegistry>();
    for (std::size_t k = 0; k < modes; ++k) {
        registry->register_mode(
            {static_cast<std::uint16_t>(k), Channel::A1, TimeBin::Short, Polarization::H});
    }
    return registry;
}

/// Haar-distributed up to a global phase.
inline Matrix2 random_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    Amplitude a{gauss(rng), gauss(rng)};
    Amplitude b{gauss(rng), gauss(rng)};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    const Amplitude g = std::polar(1.0, phase(rng));
    return {{{g * a, -g * std::conj(b)}, {b, std::conj(a)}}};
}

/// A few random terms with at most `max_per_mode` photons in each mode.
inline FockState random_state(const RegistryPtr &registry, std::mt19937_64 &rng,
                              unsigned max_per_mode = 2) {
    std::uniform_int_distribution<int> terms(1, 6);
    std::uniform_int_distribution<unsigned> occupancy(0, max_per_mode);
    std::normal_distribution<double> gauss;
    FockState state(registry);
    const int k = terms(rng);
    for (int i = 0; i < k; ++i) {
        OccupationVector occ;
        for (ModeIndex m = 0; m < registry->size(); ++m) {
            occ.set(m, occupancy(rng));
        }
        state.add(occ, {gauss(rng), gauss(rng)});
    }
    if (squared_norm(state) == 0.0) {
        return FockState::vacuum(registry);
    }
    return state.normalized();
}

} // namespace wamp::testing
