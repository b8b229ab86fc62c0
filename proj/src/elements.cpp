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
#include "wamp/elements.hpp"

#include <cmath>

#include "wamp/error.hpp"

namespace wamp {

namespace {

bool occupied(const FockState &state, ModeIndex mode) {
    for (const auto &[occ, amp] : state.terms()) {
        if (occ.count(mode) != 0) {
            return true;
        }
    }
    return false;
}

std::optional<ModeIndex> occupied_mode(const FockState &state, Port port, Sublabel sub) {
    auto mode = state.registry()->find(port.with(sub));
    if (mode && occupied(state, *mode)) {
        return mode;
    }
    return std::nullopt;
}

ModeIndex require_mode(const FockState &state, Port port, Sublabel sub) {
    auto mode = state.registry()->find(port.with(sub));
    if (!mode) {
        fail(ErrorCode::UnregisteredMode,
             "output mode " + to_string(port.with(sub)) + " is not registered");
    }
    return *mode;
}

// Wrong sign on the transmitted amplitude of the first input. Still unitary.
Matrix2 flipped_bs5050_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{{-r, r}, {r, r}}};
}

void check_branch(const Ensemble::Branch &b) {
    if (b.weight < -kEnsembleTolerance || b.weight > 1.0 + kEnsembleTolerance) {
        fail(ErrorCode::InvalidArgument, "ensemble weight outside [0,1]");
    }
    if (std::abs(squared_norm(b.state) - 1.0) > kEnsembleTolerance) {
        fail(ErrorCode::InvalidArgument, "ensemble branch state is not normalized");
    }
}

} // namespace

Ensemble::Ensemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) {
        return;
    }
    double total = 0.0;
    for (const auto &b : branches_) {
        check_branch(b);
        total += b.weight;
    }
    if (std::abs(total - 1.0) > kEnsembleTolerance) {
        fail(ErrorCode::InvalidArgument, "ensemble weights do not sum to 1");
    }
}

const Ensemble::Branch *Ensemble::find(BranchKind kind) const {
    for (const auto &b : branches_) {
        if (b.kind == kind) {
            return &b;
        }
    }
    return nullptr;
}

Matrix2 bs5050_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{{r, r}, {r, -r}}};
}

Matrix2 vbs_matrix(double t) {
    const double kept = std::sqrt(t);
    const double out = std::sqrt(1.0 - t);
    return {{{kept, -out}, {out, kept}}};
}

namespace {

FockState bs5050_impl(FockState state, Port in1, Port in2, Port out1, Port out2,
                      bool flip_v) {
    for (const auto sub : kAllSublabels) {
        auto i1 = occupied_mode(state, in1, sub);
        auto i2 = occupied_mode(state, in2, sub);
        if (!i1 && !i2) {
            continue;
        }
        const ModeIndex o1 = require_mode(state, out1, sub);
        const ModeIndex o2 = require_mode(state, out2, sub);
        if (i1) {
            state = move_mode(state, *i1, o1);
        }
        if (i2) {
            state = move_mode(state, *i2, o2);
        }
        const bool flip = flip_v && sub.polarization == Polarization::V;
        state = apply_two_mode_unitary(state, o1, o2,
                                       flip ? flipped_bs5050_matrix() : bs5050_matrix());
    }
    return state;
}

} // namespace

FockState apply_bs5050(const FockState &state, Port in1, Port in2, Port out1,
                       Port out2) {
    return bs5050_impl(state, in1, in2, out1, out2, false);
}

FockState apply_vbs(const FockState &state, Port in, Port kept, Port out, double t) {
    if (!(t > 0.0 && t < 1.0)) {
        fail(ErrorCode::InvalidArgument, "VBS transmission must lie in (0,1)");
    }
    FockState result = state;
    for (const auto sub : kAllSublabels) {
        auto i = occupied_mode(result, in, sub);
        if (!i) {
            continue;
        }
        const ModeIndex k = require_mode(result, kept, sub);
        const ModeIndex o = require_mode(result, out, sub);
        result = move_mode(result, *i, k);
        result = apply_two_mode_unitary(result, k, o, vbs_matrix(t));
    }
    return result;
}

FockState apply_pbs(const FockState &state, Port in, Port out_h, Port out_v) {
    FockState result = state;
    for (const auto sub : kAllSublabels) {
        auto i = occupied_mode(result, in, sub);
        if (!i) {
            continue;
        }
        const Port target = sub.polarization == Polarization::H ? out_h : out_v;
        result = move_mode(result, *i, require_mode(result, target, sub));
    }
    return result;
}

FockState apply_element(const FockState &state, const Element &element) {
    auto need = [&](std::size_t ins, std::size_t outs) {
        if (element.inputs.size() != ins || element.outputs.size() != outs) {
            fail(ErrorCode::InvalidArgument, "element has the wrong number of ports");
        }
    };
    switch (element.kind) {
    case ElementKind::BS5050:
        need(2, 2);
        return bs5050_impl(state, element.inputs[0], element.inputs[1],
                           element.outputs[0], element.outputs[1],
                           element.fault_flip_v_sign);
    case ElementKind::VBS:
        need(1, 2);
        return apply_vbs(state, element.inputs[0], element.outputs[0],
                         element.outputs[1], element.t);
    case ElementKind::PBS:
        need(1, 2);
        return apply_pbs(state, element.inputs[0], element.outputs[0],
                         element.outputs[1]);
    }
    fail(ErrorCode::InvalidArgument, "unknown element kind");
}

Ensemble apply_element(const Ensemble &ensemble, const Element &element) {
    std::vector<Ensemble::Branch> out;
    out.reserve(ensemble.branches().size());
    for (const auto &b : ensemble.branches()) {
        out.push_back({b.weight, apply_element(b.state, element), b.kind});
    }
    return Ensemble(std::move(out));
}

Ensemble apply_loss_channel(const FockState &signal, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "loss parameter eta must lie in [0,1]");
    }
    if (std::abs(squared_norm(signal) - 1.0) > kEnsembleTolerance) {
        fail(ErrorCode::InvalidArgument, "loss channel input is not normalized");
    }
    std::vector<Ensemble::Branch> branches;
    if (eta > 0.0) {
        branches.push_back({eta, signal, BranchKind::Signal});
    }
    if (eta < 1.0) {
        branches.push_back(
            {1.0 - eta, FockState::vacuum(signal.registry()), BranchKind::Vacuum});
    }
    return Ensemble(std::move(branches));
}

} // namespace wamp
