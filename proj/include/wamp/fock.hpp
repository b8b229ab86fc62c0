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
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

namespace wamp {

using Amplitude = std::complex<double>;

/// Amplitudes smaller than this are dropped after every element application.
inline constexpr double kPruneThreshold = 1e-14;

/// Per-mode occupancy cap. The amplifier never puts more than two photons in
/// one mode, so hitting the cap means a wiring error upstream.
inline constexpr unsigned kMaxOccupancy = 4;

inline constexpr double kUnitarityTolerance = 1e-12;

enum class TimeBin : std::uint8_t { Short, Long };
enum class Polarization : std::uint8_t { H, V };

/// Spatial stage tags. A1/A2 are the signal and auxiliary inputs of a party,
/// A3/A4 the 50:50 outputs, A5..A8 the detector ports behind the PBS pair.
enum class Channel : std::uint8_t { A1, A2, A3, A4, A5, A6, A7, A8, Out };

inline constexpr std::uint16_t kSharedParty = 0xFFFF;

struct ModeLabel {
    std::uint16_t party = 0;
    Channel channel = Channel::A1;
    TimeBin timebin = TimeBin::Short;
    Polarization polarization = Polarization::H;

    auto operator<=>(const ModeLabel &) const = default;
};

/// The two (time-bin, polarization) sublabels used by the protocol. Time bin
/// and polarization are locked: S rides on H, L rides on V.
struct Sublabel {
    TimeBin timebin;
    Polarization polarization;

    auto operator<=>(const Sublabel &) const = default;
};

inline constexpr Sublabel kShortH{TimeBin::Short, Polarization::H};
inline constexpr Sublabel kLongV{TimeBin::Long, Polarization::V};
inline constexpr std::array<Sublabel, 4> kAllSublabels{
    Sublabel{TimeBin::Short, Polarization::H},
    Sublabel{TimeBin::Short, Polarization::V},
    Sublabel{TimeBin::Long, Polarization::H},
    Sublabel{TimeBin::Long, Polarization::V}};

/// A spatial port: a party's channel, independent of time bin and polarization.
struct Port {
    std::uint16_t party = 0;
    Channel channel = Channel::A1;

    auto operator<=>(const Port &) const = default;

    [[nodiscard]] ModeLabel with(Sublabel sub) const {
        return {party, channel, sub.timebin, sub.polarization};
    }
};

std::string channel_name(Channel channel);
std::string to_string(const Port &port);
std::string to_string(const ModeLabel &label);

using ModeIndex = std::size_t;

/// Append-only mapping from mode labels to dense indices.
class ModeRegistry {
  public:
    /// Idempotent: re-registering a label returns its existing index.
    ModeIndex register_mode(const ModeLabel &label);
    [[nodiscard]] std::optional<ModeIndex> find(const ModeLabel &label) const;
    [[nodiscard]] const ModeLabel &label(ModeIndex index) const;
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }

  private:
    std::vector<ModeLabel> labels_;
    std::map<ModeLabel, ModeIndex> index_;
};

using RegistryPtr = std::shared_ptr<ModeRegistry>;

/// Largest registry an occupation vector can index (18 modes per party, so
/// up to seven parties for the amplifier).
inline constexpr std::size_t kMaxModes = 128;

/// Photon counts per registered mode, packed four bits per mode. Modes never
/// written read as zero, which is what lets a registry grow without touching
/// existing states.
class OccupationVector {
  public:
    static constexpr std::size_t kModesPerWord = 16;
    using Words = std::array<std::uint64_t, kMaxModes / kModesPerWord>;

    OccupationVector() = default;
    explicit OccupationVector(const std::vector<std::uint8_t> &counts);

    /// Builds a vector with one photon in each listed mode (repeats stack).
    static OccupationVector of(std::initializer_list<ModeIndex> modes);

    [[nodiscard]] unsigned count(ModeIndex mode) const noexcept {
        if (mode >= kMaxModes) {
            return 0U;
        }
        return static_cast<unsigned>(
            (words_[mode / kModesPerWord] >> (4 * (mode % kModesPerWord))) & 0xFU);
    }
    void set(ModeIndex mode, unsigned value);
    [[nodiscard]] unsigned total() const noexcept;
    [[nodiscard]] bool empty() const noexcept;
    /// Indices of all occupied modes, ascending.
    [[nodiscard]] std::vector<ModeIndex> occupied_modes() const;
    [[nodiscard]] const Words &words() const noexcept { return words_; }

    /// Sum of two vectors with disjoint supports.
    [[nodiscard]] OccupationVector merged(const OccupationVector &other) const;

    bool operator==(const OccupationVector &) const = default;

  private:
    Words words_{};
};

struct OccupationHash {
    std::size_t operator()(const OccupationVector &occ) const noexcept;
};

/// u[row][col]; column c is the image of the creation operator of the c-th mode.
using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

Matrix2 adjoint(const Matrix2 &u);
bool is_unitary(const Matrix2 &u, double tolerance = kUnitarityTolerance);

/// Sparse pure state over the modes of a registry.
class FockState {
  public:
    using Terms = absl::flat_hash_map<OccupationVector, Amplitude, OccupationHash>;

    explicit FockState(RegistryPtr registry);

    /// The state with zero terms (norm 0).
    static FockState zero(RegistryPtr registry);
    /// The vacuum ket, amplitude 1 on the empty occupation.
    static FockState vacuum(RegistryPtr registry);
    static FockState basis(RegistryPtr registry, OccupationVector occ,
                           Amplitude amplitude = 1.0);

    [[nodiscard]] const Terms &terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] Amplitude amplitude(const OccupationVector &occ) const;
    [[nodiscard]] const RegistryPtr &registry() const noexcept { return registry_; }

    /// Accumulates into an existing term; used while building states.
    void add(const OccupationVector &occ, Amplitude amplitude);
    void reserve(std::size_t n) { terms_.reserve(n); }

    [[nodiscard]] FockState scaled(Amplitude factor) const;
    [[nodiscard]] FockState plus(const FockState &other) const;
    /// The zero state normalizes to itself.
    [[nodiscard]] FockState normalized() const;
    [[nodiscard]] FockState pruned(double threshold = kPruneThreshold) const;
    /// In-place variant of pruned(), for states under construction.
    void prune(double threshold = kPruneThreshold);

    /// Every mode carrying a photon in at least one term.
    [[nodiscard]] std::set<ModeIndex> support() const;

  private:
    RegistryPtr registry_;
    Terms terms_;
};

/// Compensated sum taken in ascending order, so that the result does not
/// depend on the order the values were collected in.
double ordered_sum(std::vector<double> values);

double squared_norm(const FockState &state);

/// <bra|ket>
Amplitude inner_product(const FockState &bra, const FockState &ket);

/// |<a|b>|^2 / (|a|^2 |b|^2); zero when either state is the zero state.
double fidelity(const FockState &a, const FockState &b);

/// Product of states on disjoint supports of one registry.
FockState tensor(const FockState &lhs, const FockState &rhs);

/// Transforms creation operators as
///   a+_{m1} -> u00 a+_{m1} + u10 a+_{m2},   a+_{m2} -> u01 a+_{m1} + u11 a+_{m2}
/// with the full bosonic combinatorics for multi-occupied modes.
FockState apply_two_mode_unitary(const FockState &state, ModeIndex m1,
                                 ModeIndex m2, const Matrix2 &u);

/// Moves all photons of mode `from` into mode `to`, which must be empty.
FockState move_mode(const FockState &state, ModeIndex from, ModeIndex to);

/// Multiplies every term by phase^n, n the occupancy of `mode`.
FockState apply_mode_phase(const FockState &state, ModeIndex mode,
                           Amplitude phase);

struct Projection {
    double probability = 0.0;
    FockState conditional;
};

/// Born-rule projection on photon counts. Modes in `measured` but not in
/// `pattern` must be empty. The conditional state has the measured modes
/// cleared and is renormalized (the zero state when probability is 0).
Projection project_counts(const FockState &state,
                          const std::map<ModeIndex, unsigned> &pattern,
                          const std::set<ModeIndex> &measured);

/// Sum of |amp|^2 grouped by total photon number.
std::map<unsigned, double> photon_number_distribution(const FockState &state);

} // namespace wamp
