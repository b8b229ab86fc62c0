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
#include "wamp/heralding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "wamp/error.hpp"

namespace wamp {

namespace {

constexpr std::array<std::pair<Detector, Detector>, 4> kSuccessPairs{
    std::pair{Detector::D1, Detector::D2}, std::pair{Detector::D1, Detector::D4},
    std::pair{Detector::D2, Detector::D3}, std::pair{Detector::D3, Detector::D4}};

bool is_h_side(std::size_t detector) { return detector % 2 == 0; }

Sublabel locked_sublabel(std::size_t detector) {
    return is_h_side(detector) ? kShortH : kLongV;
}

std::vector<std::uint8_t> flatten(const DetectionPattern &pattern) {
    std::vector<std::uint8_t> key;
    key.reserve(pattern.counts.size() * 4);
    for (const auto &party : pattern.counts) {
        key.insert(key.end(), party.begin(), party.end());
    }
    return key;
}

void check_party_count(const DetectionPattern &pattern, const Circuit &circuit) {
    if (pattern.n_parties() != circuit.n_parties) {
        fail(ErrorCode::InvalidArgument, "pattern and circuit disagree on party count");
    }
}

// Reference configuration used to classify the heralded signs.
constexpr double kReferenceT = 0.3;
constexpr double kReferenceAlpha = 0.6;
constexpr double kReferenceBeta = 0.8;
constexpr double kSignTolerance = 1e-9;

Amplitude out_amplitude(const FockState &state, const Circuit &circuit, int party,
                        Sublabel sub) {
    const auto mode = circuit.registry->find(circuit.out_ports.at(party).with(sub));
    return state.amplitude(OccupationVector::of({*mode}));
}

std::map<DetectionPattern, Correction> derive_corrections(int n) {
    ProtocolConfig ref{n, kReferenceT, 1.0,
                       TimeBinQubit::make(kReferenceAlpha, kReferenceBeta)};
    const Circuit circuit = build_amplifier(ref);
    const Ensemble input = prepare_input(ref, circuit);
    const FockState evolved = run_circuit(input.find(BranchKind::Signal)->state, circuit);
    const DetectionIndex index(evolved, circuit);

    std::map<DetectionPattern, Correction> table;
    for (const auto &pattern : success_patterns(n)) {
        const auto outcome = index.lookup(pattern);
        if (outcome.probability == 0.0) {
            fail(ErrorCode::InvariantViolation,
                 "success pattern " + pattern.to_string() + " never occurs");
        }
        const Amplitude r0 =
            out_amplitude(outcome.conditional, circuit, 0, kShortH) / kReferenceAlpha;
        const Amplitude phase = r0 / std::abs(r0);
        Correction correction(n);
        auto classify = [&](Amplitude amp, double reference) {
            const Amplitude rel = amp / reference / phase;
            if (std::abs(std::abs(rel.real()) - std::abs(r0)) > kSignTolerance ||
                std::abs(rel.imag()) > kSignTolerance) {
                fail(ErrorCode::InvariantViolation,
                     "heralded state of " + pattern.to_string() +
                         " is not a sign-flipped W state");
            }
            return rel.real() < 0.0;
        };
        for (int k = 0; k < n; ++k) {
            correction[k].negate_short = classify(
                out_amplitude(outcome.conditional, circuit, k, kShortH), kReferenceAlpha);
            correction[k].negate_long = classify(
                out_amplitude(outcome.conditional, circuit, k, kLongV), kReferenceBeta);
        }
        table.emplace(pattern, std::move(correction));
    }
    return table;
}

} // namespace

DetectionPattern DetectionPattern::from_pairs(
    const std::vector<std::pair<Detector, Detector>> &pairs) {
    DetectionPattern p;
    p.counts.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        p.counts[i] = {0, 0, 0, 0};
        p.counts[i][static_cast<std::size_t>(pairs[i].first)] += 1;
        p.counts[i][static_cast<std::size_t>(pairs[i].second)] += 1;
    }
    return p;
}

bool DetectionPattern::is_success() const {
    if (counts.empty()) {
        return false;
    }
    return std::all_of(counts.begin(), counts.end(), [](const auto &c) {
        return c[0] + c[2] == 1 && c[1] + c[3] == 1 && c[0] <= 1 && c[1] <= 1 &&
               c[2] <= 1 && c[3] <= 1;
    });
}

std::string DetectionPattern::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i != 0) {
            s += '|';
        }
        bool any = false;
        for (std::size_t d = 0; d < 4; ++d) {
            for (unsigned c = 0; c < counts[i][d]; ++c) {
                s += "D" + std::to_string(d + 1);
                any = true;
            }
        }
        if (!any) {
            s += '-';
        }
    }
    return s;
}

std::vector<DetectionPattern> success_patterns(int n) {
    if (n < 1) {
        fail(ErrorCode::InvalidArgument, "success_patterns needs n >= 1");
    }
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= kSuccessPairs.size();
    }
    std::vector<DetectionPattern> patterns;
    patterns.reserve(total);
    std::vector<std::pair<Detector, Detector>> pairs(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t rest = code;
        for (int i = n - 1; i >= 0; --i) {
            pairs[i] = kSuccessPairs[rest % 4];
            rest /= 4;
        }
        patterns.push_back(DetectionPattern::from_pairs(pairs));
    }
    return patterns;
}

Correction correction_for(const DetectionPattern &pattern) {
    if (!pattern.is_success()) {
        fail(ErrorCode::InvalidArgument,
             "no correction for non-success pattern " + pattern.to_string());
    }
    static std::mutex mutex;
    static std::map<int, std::map<DetectionPattern, Correction>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(pattern.n_parties());
    if (it == cache.end()) {
        it = cache.emplace(pattern.n_parties(), derive_corrections(pattern.n_parties()))
                 .first;
    }
    return it->second.at(pattern);
}

FockState apply_correction(const FockState &state, const Correction &correction,
                           const Circuit &circuit) {
    if (static_cast<int>(correction.size()) != circuit.n_parties) {
        fail(ErrorCode::InvalidArgument, "correction and circuit disagree on party count");
    }
    FockState s = state;
    for (int k = 0; k < circuit.n_parties; ++k) {
        const Port out = circuit.out_ports[k];
        if (correction[k].negate_short) {
            s = apply_mode_phase(s, *circuit.registry->find(out.with(kShortH)), -1.0);
        }
        if (correction[k].negate_long) {
            s = apply_mode_phase(s, *circuit.registry->find(out.with(kLongV)), -1.0);
        }
    }
    return s;
}

FockState target_state(const Circuit &circuit, const TimeBinQubit &qubit) {
    return prepare_w_state(circuit.n_parties, qubit, circuit.registry, Channel::Out);
}

PostselectResult postselect(const Ensemble &evolved, const DetectionPattern &pattern,
                            const Circuit &circuit) {
    check_party_count(pattern, circuit);
    std::map<ModeIndex, unsigned> required;
    std::set<ModeIndex> measured;
    for (std::size_t i = 0; i < circuit.detector_ports.size(); ++i) {
        const Port port = circuit.detector_ports[i];
        const std::size_t d = i % 4;
        const unsigned count = pattern.counts[i / 4][d];
        for (const auto sub : kAllSublabels) {
            auto mode = circuit.registry->find(port.with(sub));
            if (!mode) {
                continue;
            }
            measured.insert(*mode);
            if (sub == locked_sublabel(d) && count != 0) {
                required[*mode] = count;
            }
        }
    }

    PostselectResult result;
    std::vector<Ensemble::Branch> kept;
    double total = 0.0;
    for (const auto &b : evolved.branches()) {
        auto proj = project_counts(b.state, required, measured);
        result.branch_probabilities.push_back(proj.probability);
        if (b.kind == BranchKind::Signal) {
            result.p_signal = proj.probability;
        } else if (b.kind == BranchKind::Vacuum) {
            result.p_vacuum = proj.probability;
        }
        if (proj.probability > 0.0 && b.weight > 0.0) {
            total += b.weight * proj.probability;
            kept.push_back({b.weight * proj.probability, std::move(proj.conditional), b.kind});
        }
    }
    if (total > 0.0) {
        for (auto &b : kept) {
            b.weight /= total;
        }
        result.conditional = Ensemble(std::move(kept));
    }
    return result;
}

std::size_t DetectionIndex::KeyHash::operator()(
    const std::vector<std::uint8_t> &key) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : key) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

DetectionIndex::DetectionIndex(const FockState &evolved, const Circuit &circuit)
    : registry_(circuit.registry), n_parties_(circuit.n_parties) {
    if (evolved.registry() != circuit.registry) {
        fail(ErrorCode::InvalidArgument, "state is not defined over the circuit registry");
    }
    struct DetectorMode {
        ModeIndex mode;
        std::size_t slot;
        bool locked;
    };
    std::vector<DetectorMode> modes;
    for (std::size_t i = 0; i < circuit.detector_ports.size(); ++i) {
        for (const auto sub : kAllSublabels) {
            if (auto m = registry_->find(circuit.detector_ports[i].with(sub))) {
                modes.push_back({*m, i, sub == locked_sublabel(i % 4)});
            }
        }
    }

    std::vector<std::uint8_t> key(circuit.detector_ports.size());
    for (const auto &[occ, amp] : evolved.terms()) {
        std::fill(key.begin(), key.end(), 0);
        OccupationVector rest = occ;
        for (const auto &dm : modes) {
            const unsigned c = occ.count(dm.mode);
            if (c == 0) {
                continue;
            }
            // H-side detectors must only see S-bin photons and V-side only
            // L-bin photons, otherwise port totals would not identify the
            // detected state.
            if (!dm.locked) {
                fail(ErrorCode::InvariantViolation,
                     "time-bin/polarization locking broken at " +
                         to_string(registry_->label(dm.mode)));
            }
            key[dm.slot] = static_cast<std::uint8_t>(key[dm.slot] + c);
            rest.set(dm.mode, 0);
        }
        auto it = groups_.try_emplace(key, registry_).first;
        it->second.add(rest, amp);
    }
}

DetectionIndex::Outcome DetectionIndex::lookup(const DetectionPattern &pattern) const {
    if (pattern.n_parties() != n_parties_) {
        fail(ErrorCode::InvalidArgument, "pattern and index disagree on party count");
    }
    auto it = groups_.find(flatten(pattern));
    if (it == groups_.end()) {
        return {0.0, FockState::zero(registry_)};
    }
    const double p = squared_norm(it->second);
    if (p == 0.0) {
        return {0.0, FockState::zero(registry_)};
    }
    return {p, it->second.scaled(1.0 / std::sqrt(p))};
}

double DetectionIndex::total_probability() const {
    std::vector<double> values;
    values.reserve(groups_.size());
    for (const auto &[key, state] : groups_) {
        values.push_back(squared_norm(state));
    }
    return ordered_sum(std::move(values));
}

BranchStatistics analyze_branch(const FockState &evolved, BranchKind kind,
                                const Circuit &circuit, const TimeBinQubit &qubit) {
    BranchStatistics stats;
    stats.kind = kind;
    const DetectionIndex index(evolved, circuit);
    const FockState target = target_state(circuit, qubit);
    stats.completeness = index.total_probability();
    stats.outcome_count = index.outcome_count();
    for (const auto &pattern : success_patterns(circuit.n_parties)) {
        auto outcome = index.lookup(pattern);
        stats.success_probability += outcome.probability;
        stats.pattern_probability.push_back(outcome.probability);
        if (outcome.probability == 0.0) {
            stats.pattern_fidelity.push_back(0.0);
            stats.corrected.push_back(std::move(outcome.conditional));
            continue;
        }
        FockState corrected =
            apply_correction(outcome.conditional, correction_for(pattern), circuit);
        stats.pattern_fidelity.push_back(fidelity(target, corrected));
        stats.corrected.push_back(std::move(corrected));
    }
    return stats;
}

HeraldReport combine(const BranchStatistics &signal, const BranchStatistics &vacuum,
                     const Circuit &circuit, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "eta must lie in [0,1]");
    }
    const auto patterns = success_patterns(circuit.n_parties);
    auto sized = [&](const BranchStatistics &s) {
        return s.pattern_probability.size() == patterns.size();
    };
    if (!sized(signal) || !sized(vacuum)) {
        fail(ErrorCode::InvalidArgument, "branch statistics do not match the circuit");
    }

    HeraldReport r;
    r.n_parties = circuit.n_parties;
    r.eta = eta;
    r.p1 = signal.success_probability;
    r.p2 = vacuum.success_probability;
    r.p_total = eta * r.p1 + (1.0 - eta) * r.p2;

    const double mean_signal = r.p1 / static_cast<double>(patterns.size());
    const double mean_vacuum = r.p2 / static_cast<double>(patterns.size());
    double weighted_fidelity = 0.0;
    r.min_corrected_fidelity = 1.0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        PatternOutcome po{patterns[i], signal.pattern_probability[i],
                          vacuum.pattern_probability[i], signal.pattern_fidelity[i]};
        r.uniformity_residual =
            std::max({r.uniformity_residual, std::abs(po.p_signal - mean_signal),
                      std::abs(po.p_vacuum - mean_vacuum)});
        r.min_corrected_fidelity = std::min(r.min_corrected_fidelity, po.corrected_fidelity);
        weighted_fidelity += eta * po.p_signal * signal.pattern_fidelity[i] +
                             (1.0 - eta) * po.p_vacuum * vacuum.pattern_fidelity[i];
        r.patterns.push_back(std::move(po));
    }
    if (r.uniformity_residual > kUniformityTolerance) {
        fail(ErrorCode::InvariantViolation,
             "success patterns are not equiprobable (residual " +
                 std::to_string(r.uniformity_residual) + ")");
    }
    r.completeness_residual = 0.0;
    for (const auto *s : {&signal, &vacuum}) {
        if (s->outcome_count != 0) {
            r.completeness_residual =
                std::max(r.completeness_residual, std::abs(s->completeness - 1.0));
        }
    }
    if (r.p_total <= 0.0) {
        fail(ErrorCode::InvariantViolation, "no heralding probability at this setting");
    }
    r.eta_prime = weighted_fidelity / r.p_total;
    if (eta > 0.0) {
        r.gain = r.eta_prime / eta;
    }

    std::vector<Ensemble::Branch> out;
    if (r.eta_prime > 0.0 && r.p1 > 0.0) {
        out.push_back({r.eta_prime, signal.corrected.front(), BranchKind::Signal});
    }
    if (r.eta_prime < 1.0) {
        out.push_back({1.0 - r.eta_prime, FockState::vacuum(circuit.registry),
                       BranchKind::Vacuum});
    }
    r.output = Ensemble(std::move(out));
    return r;
}

HeraldReport herald(const Ensemble &evolved, const Circuit &circuit,
                    const ProtocolConfig &cfg) {
    cfg.validate();
    if (cfg.n_parties != circuit.n_parties) {
        fail(ErrorCode::InvalidArgument, "config and circuit disagree on party count");
    }
    auto stats_for = [&](BranchKind kind) {
        if (const auto *b = evolved.find(kind)) {
            return analyze_branch(b->state, kind, circuit, cfg.qubit);
        }
        BranchStatistics empty;
        empty.kind = kind;
        const auto n = success_patterns(circuit.n_parties).size();
        empty.pattern_probability.assign(n, 0.0);
        empty.pattern_fidelity.assign(n, 0.0);
        empty.corrected.assign(n, FockState::zero(circuit.registry));
        return empty;
    };
    for (const auto &b : evolved.branches()) {
        if (b.kind == BranchKind::Other) {
            fail(ErrorCode::InvalidArgument, "herald expects signal and vacuum branches");
        }
    }
    const auto *signal = evolved.find(BranchKind::Signal);
    const double eta = signal ? signal->weight : 0.0;
    if (std::abs(eta - cfg.eta) > kEnsembleTolerance) {
        fail(ErrorCode::InvalidArgument, "ensemble signal weight differs from cfg.eta");
    }
    return combine(stats_for(BranchKind::Signal), stats_for(BranchKind::Vacuum), circuit,
                   cfg.eta);
}

HeraldReport simulate(const ProtocolConfig &cfg, AmplifierOptions options) {
    const Circuit circuit = build_amplifier(cfg, options);
    const Ensemble evolved = run_circuit(prepare_input(cfg, circuit), circuit);
    return herald(evolved, circuit, cfg);
}

} // namespace wamp
