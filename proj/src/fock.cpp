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
#include "wamp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wamp/error.hpp"

namespace wamp {

namespace {

std::string party_name(std::uint16_t party) {
    if (party == kSharedParty) {
        return "shared";
    }
    if (party < 26) {
        return std::string(1, static_cast<char>('a' + party));
    }
    return "p" + std::to_string(party) + "_";
}

// Neumaier summation; large states hold ~10^6 terms.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double next = sum_ + x;
        compensation_ += (sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)
                             ? (sum_ - next) + x
                             : (x - next) + sum_;
        sum_ = next;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double factorial(unsigned n) {
    static constexpr std::array<double, 2 * kMaxOccupancy + 1> table = [] {
        std::array<double, 2 * kMaxOccupancy + 1> f{};
        f[0] = 1.0;
        for (std::size_t i = 1; i < f.size(); ++i) {
            f[i] = f[i - 1] * static_cast<double>(i);
        }
        return f;
    }();
    return table.at(n);
}

double binomial(unsigned n, unsigned k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

Amplitude ipow(Amplitude base, unsigned exponent) {
    Amplitude r = 1.0;
    for (unsigned i = 0; i < exponent; ++i) {
        r *= base;
    }
    return r;
}

void require_same_registry(const FockState &a, const FockState &b) {
    if (a.registry() != b.registry()) {
        fail(ErrorCode::InvalidArgument, "states belong to different mode registries");
    }
}

} // namespace

std::string channel_name(Channel channel) {
    switch (channel) {
    case Channel::A1: return "1";
    case Channel::A2: return "2";
    case Channel::A3: return "3";
    case Channel::A4: return "4";
    case Channel::A5: return "5";
    case Channel::A6: return "6";
    case Channel::A7: return "7";
    case Channel::A8: return "8";
    case Channel::Out: return "out";
    }
    return "?";
}

std::string to_string(const Port &port) {
    if (port.channel == Channel::Out) {
        return port.party == kSharedParty ? "out"
                                          : "out" + std::to_string(port.party + 1);
    }
    return party_name(port.party) + channel_name(port.channel);
}

std::string to_string(const ModeLabel &label) {
    std::string s = label.timebin == TimeBin::Short ? "S" : "L";
    s += label.polarization == Polarization::H ? "_H@" : "_V@";
    return s + to_string(Port{label.party, label.channel});
}

ModeIndex ModeRegistry::register_mode(const ModeLabel &label) {
    if (auto it = index_.find(label); it != index_.end()) {
        return it->second;
    }
    if (labels_.size() >= kMaxModes) {
        fail(ErrorCode::InvalidArgument, "mode registry is full");
    }
    auto [it, inserted] = index_.try_emplace(label, labels_.size());
    if (inserted) {
        labels_.push_back(label);
    }
    return it->second;
}

std::optional<ModeIndex> ModeRegistry::find(const ModeLabel &label) const {
    if (auto it = index_.find(label); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

const ModeLabel &ModeRegistry::label(ModeIndex index) const {
    if (index >= labels_.size()) {
        fail(ErrorCode::UnregisteredMode, "mode index " + std::to_string(index) +
                                              " is not registered");
    }
    return labels_[index];
}

OccupationVector::OccupationVector(const std::vector<std::uint8_t> &counts) {
    for (std::size_t m = 0; m < counts.size(); ++m) {
        set(m, counts[m]);
    }
}

OccupationVector OccupationVector::of(std::initializer_list<ModeIndex> modes) {
    OccupationVector occ;
    for (auto m : modes) {
        occ.set(m, occ.count(m) + 1);
    }
    return occ;
}

void OccupationVector::set(ModeIndex mode, unsigned value) {
    if (value > kMaxOccupancy) {
        fail(ErrorCode::OccupancyOverflow,
             "occupancy " + std::to_string(value) + " exceeds cap of " +
                 std::to_string(kMaxOccupancy));
    }
    if (mode >= kMaxModes) {
        fail(ErrorCode::InvalidArgument,
             "mode index " + std::to_string(mode) + " exceeds the supported range");
    }
    const unsigned shift = 4 * (mode % kModesPerWord);
    auto &word = words_[mode / kModesPerWord];
    word = (word & ~(std::uint64_t{0xF} << shift)) | (std::uint64_t{value} << shift);
}

unsigned OccupationVector::total() const noexcept {
    unsigned sum = 0;
    for (auto w : words_) {
        while (w != 0) {
            sum += static_cast<unsigned>(w & 0xFU);
            w >>= 4;
        }
    }
    return sum;
}

bool OccupationVector::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::vector<ModeIndex> OccupationVector::occupied_modes() const {
    std::vector<ModeIndex> modes;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        auto w = words_[i];
        for (std::size_t j = 0; w != 0; ++j, w >>= 4) {
            if ((w & 0xFU) != 0) {
                modes.push_back(i * kModesPerWord + j);
            }
        }
    }
    return modes;
}

OccupationVector OccupationVector::merged(const OccupationVector &other) const {
    OccupationVector out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & other.words_[i]) != 0) {
            // Overlapping nibbles; fall back to checked per-mode addition.
            out = *this;
            for (auto m : other.occupied_modes()) {
                out.set(m, count(m) + other.count(m));
            }
            return out;
        }
        out.words_[i] = words_[i] | other.words_[i];
    }
    return out;
}

std::size_t OccupationHash::operator()(const OccupationVector &occ) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto w : occ.words()) {
        // splitmix64 finalizer on each word, folded in
        std::uint64_t z = w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        h ^= z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

Matrix2 adjoint(const Matrix2 &u) {
    return {{{std::conj(u[0][0]), std::conj(u[1][0])},
             {std::conj(u[0][1]), std::conj(u[1][1])}}};
}

bool is_unitary(const Matrix2 &u, double tolerance) {
    const Matrix2 a = adjoint(u);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Amplitude sum = a[r][0] * u[0][c] + a[r][1] * u[1][c];
            if (std::abs(sum - (r == c ? 1.0 : 0.0)) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

FockState::FockState(RegistryPtr registry) : registry_(std::move(registry)) {
    if (!registry_) {
        fail(ErrorCode::InvalidArgument, "state requires a mode registry");
    }
}

FockState FockState::zero(RegistryPtr registry) { return FockState(std::move(registry)); }

FockState FockState::vacuum(RegistryPtr registry) {
    return basis(std::move(registry), OccupationVector{}, 1.0);
}

FockState FockState::basis(RegistryPtr registry, OccupationVector occ,
                           Amplitude amplitude) {
    FockState s(std::move(registry));
    s.add(occ, amplitude);
    return s;
}

Amplitude FockState::amplitude(const OccupationVector &occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Amplitude{} : it->second;
}

void FockState::add(const OccupationVector &occ, Amplitude amplitude) {
    terms_[occ] += amplitude;
}

FockState FockState::scaled(Amplitude factor) const {
    FockState out(registry_);
    out.terms_.reserve(terms_.size());
    for (const auto &[occ, amp] : terms_) {
        out.terms_.emplace(occ, amp * factor);
    }
    return out;
}

FockState FockState::plus(const FockState &other) const {
    require_same_registry(*this, other);
    FockState out = *this;
    for (const auto &[occ, amp] : other.terms_) {
        out.terms_[occ] += amp;
    }
    return out.pruned();
}

FockState FockState::normalized() const {
    const double norm = std::sqrt(squared_norm(*this));
    if (norm == 0.0) {
        return *this;
    }
    return scaled(1.0 / norm);
}

FockState FockState::pruned(double threshold) const {
    FockState out(registry_);
    out.terms_.reserve(terms_.size());
    for (const auto &[occ, amp] : terms_) {
        if (std::abs(amp) >= threshold) {
            out.terms_.emplace(occ, amp);
        }
    }
    return out;
}

void FockState::prune(double threshold) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < threshold) {
            terms_.erase(it++);
        } else {
            ++it;
        }
    }
}

std::set<ModeIndex> FockState::support() const {
    std::set<ModeIndex> modes;
    for (const auto &[occ, amp] : terms_) {
        for (auto m : occ.occupied_modes()) {
            modes.insert(m);
        }
    }
    return modes;
}

double ordered_sum(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    CompensatedSum sum;
    for (double x : values) {
        sum.add(x);
    }
    return sum.value();
}

double squared_norm(const FockState &state) {
    std::vector<double> values;
    values.reserve(state.size());
    for (const auto &[occ, amp] : state.terms()) {
        values.push_back(std::norm(amp));
    }
    return ordered_sum(std::move(values));
}

Amplitude inner_product(const FockState &bra, const FockState &ket) {
    require_same_registry(bra, ket);
    const auto &small = bra.size() <= ket.size() ? bra : ket;
    const auto &large = bra.size() <= ket.size() ? ket : bra;
    std::vector<double> re;
    std::vector<double> im;
    for (const auto &[occ, amp] : small.terms()) {
        auto it = large.terms().find(occ);
        if (it == large.terms().end()) {
            continue;
        }
        const Amplitude x = &small == &bra ? std::conj(amp) * it->second
                                           : std::conj(it->second) * amp;
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return {ordered_sum(std::move(re)), ordered_sum(std::move(im))};
}

double fidelity(const FockState &a, const FockState &b) {
    const double na = squared_norm(a);
    const double nb = squared_norm(b);
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::norm(inner_product(a, b)) / (na * nb);
}

FockState tensor(const FockState &lhs, const FockState &rhs) {
    require_same_registry(lhs, rhs);
    const auto ls = lhs.support();
    for (auto m : rhs.support()) {
        if (ls.count(m) != 0) {
            fail(ErrorCode::OverlappingSupport,
                 "tensor factors share mode " + to_string(lhs.registry()->label(m)));
        }
    }
    FockState out(lhs.registry());
    for (const auto &[lo, la] : lhs.terms()) {
        for (const auto &[ro, ra] : rhs.terms()) {
            out.add(lo.merged(ro), la * ra);
        }
    }
    return out.pruned();
}

FockState apply_two_mode_unitary(const FockState &state, ModeIndex m1,
                                 ModeIndex m2, const Matrix2 &u) {
    if (m1 == m2) {
        fail(ErrorCode::InvalidArgument, "two-mode unitary needs distinct modes");
    }
    if (!is_unitary(u)) {
        fail(ErrorCode::NonUnitary, "matrix is not unitary to 1e-12");
    }
    constexpr unsigned kMaxPair = 2 * kMaxOccupancy;
    using Slice = std::array<Amplitude, kMaxPair + 1>;

    // Terms that agree outside (m1, m2) and carry the same pair total only
    // mix among themselves. Gathering them by n1 lets every output amplitude
    // be summed in a fixed order, whatever the hash iteration order is.
    FockState out(state.registry());
    absl::flat_hash_map<OccupationVector, Slice, OccupationHash> slices;
    slices.reserve(state.size());
    for (const auto &[occ, amp] : state.terms()) {
        const unsigned n1 = occ.count(m1);
        const unsigned n2 = occ.count(m2);
        if (n1 == 0 && n2 == 0) {
            out.add(occ, amp);
            continue;
        }
        const unsigned total = n1 + n2;
        OccupationVector key = occ;
        key.set(m1, total - total / 2);
        key.set(m2, total / 2);
        slices[key][n1] = amp;
    }

    // coefficients[total][n1][p]: <p, total-p| U |n1, total-n1>
    std::array<std::vector<Slice>, kMaxPair + 1> coefficients;
    auto table = [&](unsigned total) -> const std::vector<Slice> & {
        auto &c = coefficients[total];
        if (!c.empty()) {
            return c;
        }
        c.assign(total + 1, Slice{});
        for (unsigned n1 = 0; n1 <= total; ++n1) {
            const unsigned n2 = total - n1;
            const double inv_norm = 1.0 / std::sqrt(factorial(n1) * factorial(n2));
            // (u00 a + u10 b)^n1 (u01 a + u11 b)^n2, expanded binomially
            for (unsigned j = 0; j <= n1; ++j) {
                const Amplitude c1 =
                    binomial(n1, j) * ipow(u[0][0], j) * ipow(u[1][0], n1 - j);
                for (unsigned k = 0; k <= n2; ++k) {
                    const Amplitude c2 =
                        binomial(n2, k) * ipow(u[0][1], k) * ipow(u[1][1], n2 - k);
                    const unsigned p = j + k;
                    c[n1][p] += c1 * c2 * inv_norm *
                                std::sqrt(factorial(p) * factorial(total - p));
                }
            }
        }
        return c;
    };

    out.reserve(out.size() + slices.size() * 2);
    for (const auto &[key, slice] : slices) {
        const unsigned total = key.count(m1) + key.count(m2);
        const auto &c = table(total);
        OccupationVector next = key;
        for (unsigned p = 0; p <= total; ++p) {
            Amplitude amp{};
            for (unsigned n1 = 0; n1 <= total; ++n1) {
                amp += slice[n1] * c[n1][p];
            }
            if (amp == Amplitude{}) {
                continue;
            }
            next.set(m1, p);
            next.set(m2, total - p);
            out.add(next, amp);
        }
    }
    out.prune();
    return out;
}

FockState move_mode(const FockState &state, ModeIndex from, ModeIndex to) {
    if (from == to) {
        return state;
    }
    FockState out(state.registry());
    for (const auto &[occ, amp] : state.terms()) {
        const unsigned n = occ.count(from);
        if (n == 0) {
            out.add(occ, amp);
            continue;
        }
        if (occ.count(to) != 0) {
            fail(ErrorCode::InvalidArgument,
                 "target mode " + to_string(state.registry()->label(to)) +
                     " is already occupied");
        }
        OccupationVector next = occ;
        next.set(from, 0);
        next.set(to, n);
        out.add(next, amp);
    }
    return out;
}

FockState apply_mode_phase(const FockState &state, ModeIndex mode, Amplitude phase) {
    FockState out(state.registry());
    for (const auto &[occ, amp] : state.terms()) {
        out.add(occ, amp * ipow(phase, occ.count(mode)));
    }
    return out;
}

Projection project_counts(const FockState &state,
                          const std::map<ModeIndex, unsigned> &pattern,
                          const std::set<ModeIndex> &measured) {
    for (const auto &[mode, count] : pattern) {
        if (measured.count(mode) == 0) {
            fail(ErrorCode::InvalidArgument, "pattern mode is not in the measured set");
        }
    }
    FockState kept(state.registry());
    for (const auto &[occ, amp] : state.terms()) {
        bool match = true;
        for (auto m : measured) {
            auto it = pattern.find(m);
            const unsigned required = it == pattern.end() ? 0U : it->second;
            if (occ.count(m) != required) {
                match = false;
                break;
            }
        }
        if (!match) {
            continue;
        }
        OccupationVector rest = occ;
        for (auto m : measured) {
            rest.set(m, 0);
        }
        kept.add(rest, amp);
    }
    const double probability = squared_norm(kept);
    if (probability == 0.0) {
        return {0.0, FockState::zero(state.registry())};
    }
    return {probability, kept.scaled(1.0 / std::sqrt(probability))};
}

std::map<unsigned, double> photon_number_distribution(const FockState &state) {
    std::map<unsigned, std::vector<double>> values;
    for (const auto &[occ, amp] : state.terms()) {
        values[occ.total()].push_back(std::norm(amp));
    }
    std::map<unsigned, double> dist;
    for (auto &[total, v] : values) {
        dist[total] = ordered_sum(std::move(v));
    }
    return dist;
}

} // namespace wamp
