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

#include <vector>

#include "wamp/fock.hpp"

namespace wamp {

enum class BranchKind { Signal, Vacuum, Other };

/// Classical mixture of pure states. Weights sum to one and every branch
/// state is normalized; zero-weight branches are allowed and kept.
class Ensemble {
  public:
    struct Branch {
        double weight = 0.0;
        FockState state;
        BranchKind kind = BranchKind::Other;
    };

    Ensemble() = default;
    explicit Ensemble(std::vector<Branch> branches);

    [[nodiscard]] const std::vector<Branch> &branches() const noexcept {
        return branches_;
    }
    [[nodiscard]] bool empty() const noexcept { return branches_.empty(); }
    [[nodiscard]] const Branch *find(BranchKind kind) const;

  private:
    std::vector<Branch> branches_;
};

inline constexpr double kEnsembleTolerance = 1e-12;

enum class ElementKind { BS5050, VBS, PBS };

/// One optical element acting on spatial ports, independently for every
/// (time bin, polarization) sublabel.
///
///   BS5050: inputs {in1, in2}, outputs {out1, out2}
///   VBS:    inputs {in},       outputs {kept, out}, transmission t
///   PBS:    inputs {in},       outputs {out_h, out_v}
struct Element {
    ElementKind kind = ElementKind::BS5050;
    std::vector<Port> inputs;
    std::vector<Port> outputs;
    double t = 0.0;
    /// Test hook for negative controls: negates the transmitted amplitude of
    /// the first 50:50 input on the V sublabels only.
    bool fault_flip_v_sign = false;
};

/// |1>_in1 -> (|1>_out1 + |1>_out2)/sqrt2,  |1>_in2 -> (|1>_out1 - |1>_out2)/sqrt2
Matrix2 bs5050_matrix();

/// First column (sqrt t, sqrt(1-t)): the kept arm and the out arm, both
/// real-positive. The second column completes the unitary.
Matrix2 vbs_matrix(double t);

FockState apply_bs5050(const FockState &state, Port in1, Port in2, Port out1,
                       Port out2);
FockState apply_vbs(const FockState &state, Port in, Port kept, Port out, double t);
FockState apply_pbs(const FockState &state, Port in, Port out_h, Port out_v);

FockState apply_element(const FockState &state, const Element &element);
Ensemble apply_element(const Ensemble &ensemble, const Element &element);

/// All-or-nothing loss on the whole signal: the signal survives with
/// probability eta and is replaced by vacuum otherwise. Zero-weight branches
/// are dropped, so eta in {0, 1} yields a single branch.
Ensemble apply_loss_channel(const FockState &signal, double eta);

} // namespace wamp
