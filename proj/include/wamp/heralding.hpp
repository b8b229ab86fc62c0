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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wamp/elements.hpp"
#include "wamp/protocol.hpp"

namespace wamp {

/// Per-party detectors: D1 <-> i5 (H from i3), D2 <-> i6 (V from i3),
/// D3 <-> i7 (H from i4), D4 <-> i8 (V from i4).
enum class Detector : std::uint8_t { D1 = 0, D2 = 1, D3 = 2, D4 = 3 };

/// Photon-number-resolved outcome of all 4N detectors.
struct DetectionPattern {
    std::vector<std::array<std::uint8_t, 4>> counts;

    /// One click on each listed detector pair, one pair per party.
    static DetectionPattern from_pairs(
        const std::vector<std::pair<Detector, Detector>> &pairs);

    [[nodiscard]] int n_parties() const noexcept {
        return static_cast<int>(counts.size());
    }
    /// Every party saw exactly two photons: one on {D1,D3} and one on {D2,D4}.
    [[nodiscard]] bool is_success() const;
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const DetectionPattern &) const = default;
};

/// The 4^n heralding patterns, in lexicographic order over per-party pairs
/// (D1D2, D1D4, D2D3, D3D4).
std::vector<DetectionPattern> success_patterns(int n);

/// Sign flips on the out modes of one party.
struct PartyCorrection {
    bool negate_short = false;
    bool negate_long = false;

    bool operator==(const PartyCorrection &) const = default;
};
using Correction = std::vector<PartyCorrection>;

/// Flips that bring the heralded state of `pattern` back onto the input W
/// state. The table for each party count is derived once from a reference
/// simulation and cached; throws for non-success patterns.
Correction correction_for(const DetectionPattern &pattern);

FockState apply_correction(const FockState &state, const Correction &correction,
                           const Circuit &circuit);

/// |Phi>_N on the circuit's out ports.
FockState target_state(const Circuit &circuit, const TimeBinQubit &qubit);

struct PostselectResult {
    std::vector<double> branch_probabilities;
    double p_signal = 0.0;
    double p_vacuum = 0.0;
    /// Weight-combined conditional state on the unmeasured modes; empty when
    /// the pattern cannot occur.
    Ensemble conditional;
};

/// Projects every branch on `pattern` (exactly the pattern's photon counts
/// on the detector ports, summed over time bin and polarization).
PostselectResult postselect(const Ensemble &evolved, const DetectionPattern &pattern,
                            const Circuit &circuit);

/// Groups the terms of an evolved state by detector outcome.
class DetectionIndex {
  public:
    DetectionIndex(const FockState &evolved, const Circuit &circuit);

    struct Outcome {
        double probability = 0.0;
        FockState conditional;
    };

    [[nodiscard]] Outcome lookup(const DetectionPattern &pattern) const;
    [[nodiscard]] std::size_t outcome_count() const noexcept { return groups_.size(); }
    /// Sum of probabilities over every detector outcome present.
    [[nodiscard]] double total_probability() const;

  private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint8_t> &key) const noexcept;
    };
    RegistryPtr registry_;
    int n_parties_ = 0;
    absl::flat_hash_map<std::vector<std::uint8_t>, FockState, KeyHash> groups_;
};

struct PatternOutcome {
    DetectionPattern pattern;
    double p_signal = 0.0;
    double p_vacuum = 0.0;
    /// Fidelity of the corrected signal-branch state with |Phi>_N.
    double corrected_fidelity = 0.0;
};

/// Heralding statistics of one evolved branch, independent of its weight.
struct BranchStatistics {
    BranchKind kind = BranchKind::Other;
    std::vector<double> pattern_probability;
    std::vector<double> pattern_fidelity;
    std::vector<FockState> corrected;
    double success_probability = 0.0;
    double completeness = 0.0;
    std::size_t outcome_count = 0;
};

BranchStatistics analyze_branch(const FockState &evolved, BranchKind kind,
                                const Circuit &circuit, const TimeBinQubit &qubit);

struct HeraldReport {
    int n_parties = 0;
    double eta = 0.0;
    std::vector<PatternOutcome> patterns;
    double p1 = 0.0;
    double p2 = 0.0;
    double p_total = 0.0;
    double eta_prime = 0.0;
    std::optional<double> gain; ///< unset when eta == 0
    /// max |p(pattern) - mean p| over patterns, either branch
    double uniformity_residual = 0.0;
    double min_corrected_fidelity = 0.0;
    /// max over branches of |sum over all detector outcomes - 1|
    double completeness_residual = 0.0;
    Ensemble output;
};

inline constexpr double kUniformityTolerance = 1e-10;

/// Aggregates all 4^N success patterns into the output statistics. Throws an
/// InvariantViolation when patterns are not equiprobable within 1e-10.
HeraldReport herald(const Ensemble &evolved, const Circuit &circuit,
                    const ProtocolConfig &cfg);

/// Same aggregation from precomputed branch statistics, for reuse across eta.
HeraldReport combine(const BranchStatistics &signal, const BranchStatistics &vacuum,
                     const Circuit &circuit, double eta);

/// Builds the amplifier, evolves rho_in through it and heralds.
HeraldReport simulate(const ProtocolConfig &cfg, AmplifierOptions options = {});

} // namespace wamp
