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
#include "wamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>

#include "internal.hpp"
#include "wamp/analytics.hpp"
#include "wamp/error.hpp"
#include "wamp/heralding.hpp"

namespace wamp {

namespace {

constexpr double kStrict = 1e-10;
constexpr int kUnitarityTrials = 10000;
constexpr double kGainLimitT = 1e-3;
constexpr double kGainLimitEta = 0.2;
constexpr double kGainLimitRelative = 0.01;
const std::vector<double> kEtas{0.2, 0.6, 0.8};

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

class Check {
  public:
    Check(std::string name, double tolerance) {
        r_.name = std::move(name);
        r_.tolerance = tolerance;
        r_.passed = true;
    }

    void residual(double x) {
        if (std::isnan(x)) {
            flag("non-finite residual");
            return;
        }
        r_.max_residual = std::max(r_.max_residual, x);
    }

    void flag(const std::string &why) {
        r_.passed = false;
        if (!r_.detail.empty()) {
            r_.detail += "; ";
        }
        r_.detail += why;
    }

    void note(const std::string &what) {
        if (!r_.detail.empty()) {
            r_.detail += "; ";
        }
        r_.detail += what;
    }

    CheckResult finish() {
        if (r_.max_residual > r_.tolerance) {
            r_.passed = false;
        }
        return r_;
    }

  private:
    CheckResult r_;
};

struct GridPoint {
    int n;
    double t;
    SimulatedPoint sim;
};

std::vector<double> grid_for(int n) {
    // Party counts above 4 are slow enough that a coarse grid is used.
    if (n > 4) {
        return {0.3, 0.5, 0.7};
    }
    std::vector<double> ts;
    for (int i = 1; i <= 9; ++i) {
        ts.push_back(i / 10.0);
    }
    return ts;
}

std::vector<GridPoint> simulate_grid(const VerifyOptions &options) {
    std::vector<std::pair<int, double>> keys;
    const int top = std::max(options.max_n, 4);
    for (int n = 2; n <= top; ++n) {
        if (n > options.max_n && n != 3 && n != 4) {
            continue;
        }
        for (double t : grid_for(n)) {
            keys.emplace_back(n, t);
        }
    }
    keys.emplace_back(2, kGainLimitT);
    std::vector<std::optional<SimulatedPoint>> slots(keys.size());
    AmplifierOptions amp{options.inject_bs_sign_fault};
    parallel_for(keys.size(), options.workers, [&](std::size_t i) {
        slots[i] = simulate_point(keys[i].first, keys[i].second, amp);
    });
    std::vector<GridPoint> points;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        points.push_back({keys[i].first, keys[i].second, std::move(*slots[i])});
    }
    return points;
}

const GridPoint *find_point(const std::vector<GridPoint> &points, int n, double t) {
    for (const auto &p : points) {
        if (p.n == n && std::abs(p.t - t) < 1e-12) {
            return &p;
        }
    }
    return nullptr;
}

std::optional<HeraldReport> combine_checked(const GridPoint &p, double eta, Check &check) {
    try {
        return combine(p.sim.signal, p.sim.vacuum, p.sim.circuit, eta);
    } catch (const Error &e) {
        check.flag("n=" + std::to_string(p.n) + " t=" + fmt_double(p.t) + ": " + e.what());
        return std::nullopt;
    }
}

bool on_main_grid(const GridPoint &p) { return p.t != kGainLimitT; }

CheckResult check_branch_probabilities(const std::vector<GridPoint> &points, double tol) {
    Check c("branch_probabilities", std::min(kStrict, tol));
    for (const auto &p : points) {
        c.residual(std::abs(p.sim.signal.success_probability - p1_analytic(p.t, p.n)));
        c.residual(std::abs(p.sim.vacuum.success_probability - p2_analytic(p.t, p.n)));
    }
    return c.finish();
}

CheckResult check_fidelity_formula(const std::vector<GridPoint> &points, double tol) {
    Check c("fidelity_formula", tol);
    for (const auto &p : points) {
        if (!on_main_grid(p)) {
            continue;
        }
        for (double eta : kEtas) {
            if (auto r = combine_checked(p, eta, c)) {
                c.residual(std::abs(r->eta_prime - eta_prime_analytic(eta, p.t)));
            }
        }
    }
    return c.finish();
}

CheckResult check_gain_curves(const std::vector<GridPoint> &points, double tol) {
    Check c("gain_curves", tol);
    for (double eta : kEtas) {
        const auto fine = make_grid(0.01, 0.99, 0.01);
        for (std::size_t i = 1; i < fine.size(); ++i) {
            if (!(gain_analytic(eta, fine[i]) < gain_analytic(eta, fine[i - 1]))) {
                c.flag("analytic gain not decreasing at eta=" + fmt_double(eta));
                break;
            }
        }
        c.residual(std::abs(gain_analytic(eta, 0.5) - 1.0));
    }
    for (int n = 2; n <= 5; ++n) {
        for (double eta : kEtas) {
            std::optional<double> previous;
            for (double t : grid_for(n)) {
                const auto *p = find_point(points, n, t);
                if (p == nullptr) {
                    continue;
                }
                const auto r = combine_checked(*p, eta, c);
                if (!r || !r->gain) {
                    continue;
                }
                if (previous && !(*r->gain < *previous)) {
                    c.flag("simulated gain not decreasing at n=" + std::to_string(n) +
                           " eta=" + fmt_double(eta) + " t=" + fmt_double(t));
                }
                previous = *r->gain;
                if (t == 0.5) {
                    c.residual(std::abs(*r->gain - 1.0));
                }
            }
        }
    }
    if (const auto *p = find_point(points, 2, kGainLimitT)) {
        if (const auto r = combine_checked(*p, kGainLimitEta, c); r && r->gain) {
            const double rel = std::abs(*r->gain * kGainLimitEta - 1.0);
            c.note("gain at t=" + fmt_double(kGainLimitT) + " is within " + fmt_double(rel) +
                   " of 1/eta");
            if (!(rel < kGainLimitRelative)) {
                c.flag("low-t gain is not within 1% of 1/eta");
            }
        }
    }
    return c.finish();
}

CheckResult check_p_total_curves(const std::vector<GridPoint> &points, double tol) {
    Check c("p_total_curves", std::min(kStrict, tol));
    for (double eta : kEtas) {
        for (double t : grid_for(3)) {
            const auto *p3 = find_point(points, 3, t);
            const auto *p4 = find_point(points, 4, t);
            if (p3 == nullptr || p4 == nullptr) {
                c.flag("missing n=3/4 grid point");
                continue;
            }
            const auto r3 = combine_checked(*p3, eta, c);
            const auto r4 = combine_checked(*p4, eta, c);
            if (!r3 || !r4) {
                continue;
            }
            if (!(r4->p_total < r3->p_total)) {
                c.flag("p_total(n=4) >= p_total(n=3) at eta=" + fmt_double(eta) +
                       " t=" + fmt_double(t));
            }
            if (t == 0.5) {
                c.residual(std::abs(r3->p_total - 1.0 / 64.0));
                c.residual(std::abs(r4->p_total - 1.0 / 256.0));
            }
        }
        for (double t : make_grid(0.01, 0.99, 0.01)) {
            if (!(p_total_analytic(eta, t, 4) < p_total_analytic(eta, t, 3))) {
                c.flag("analytic p_total ordering fails at t=" + fmt_double(t));
                break;
            }
        }
    }
    return c.finish();
}

CheckResult check_pattern_uniformity(const std::vector<GridPoint> &points, double tol) {
    Check c("pattern_uniformity", std::min(kStrict, tol));
    for (const auto &p : points) {
        const double count = std::pow(4.0, p.n);
        if (p.sim.signal.pattern_probability.size() != static_cast<std::size_t>(count)) {
            c.flag("wrong number of success patterns at n=" + std::to_string(p.n));
            continue;
        }
        const double want_signal = p1_analytic(p.t, p.n) / count;
        const double want_vacuum = p2_analytic(p.t, p.n) / count;
        for (double x : p.sim.signal.pattern_probability) {
            c.residual(std::abs(x - want_signal));
        }
        for (double x : p.sim.vacuum.pattern_probability) {
            c.residual(std::abs(x - want_vacuum));
        }
    }
    return c.finish();
}

CheckResult check_corrections(const VerifyOptions &options, double tol) {
    Check c("correction_completeness", std::min(kStrict, tol));
    const std::vector<TimeBinQubit> qubits{
        TimeBinQubit{},
        TimeBinQubit::make({0.6, 0.0}, {0.8, 0.0}),
        TimeBinQubit::make({0.6, 0.0}, {0.0, 0.8}),
    };
    for (const auto &qubit : qubits) {
        ProtocolConfig cfg{3, 0.25, 1.0, qubit};
        const Circuit circuit = build_amplifier(cfg, {options.inject_bs_sign_fault});
        const Ensemble evolved = run_circuit(prepare_input(cfg, circuit), circuit);
        const auto stats = analyze_branch(evolved.find(BranchKind::Signal)->state,
                                          BranchKind::Signal, circuit, qubit);
        if (stats.pattern_fidelity.size() != 64) {
            c.flag("expected 64 success patterns");
        }
        for (double f : stats.pattern_fidelity) {
            c.residual(std::max(0.0, 1.0 - f));
        }
    }
    return c.finish();
}

CheckResult check_alpha_beta_invariance(const VerifyOptions &options, double tol) {
    Check c("alpha_beta_invariance", std::min(kStrict, tol));
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<TimeBinQubit> qubits{
        TimeBinQubit::make({1.0, 0.0}, {0.0, 0.0}),
        TimeBinQubit::make({0.0, 0.0}, {1.0, 0.0}),
        TimeBinQubit::make({r, 0.0}, {r, 0.0}),
        TimeBinQubit::make({0.6, 0.0}, {0.0, 0.8}),
    };
    for (const auto &[t, eta] : {std::pair{0.25, 0.6}, std::pair{0.7, 0.2}}) {
        std::vector<HeraldReport> reports;
        for (const auto &qubit : qubits) {
            try {
                reports.push_back(
                    simulate({3, t, eta, qubit}, {options.inject_bs_sign_fault}));
            } catch (const Error &e) {
                c.flag(e.what());
            }
        }
        for (const auto &rep : reports) {
            const auto &ref = reports.front();
            c.residual(std::abs(rep.eta_prime - ref.eta_prime));
            c.residual(std::abs(rep.gain.value_or(0.0) - ref.gain.value_or(0.0)));
            c.residual(std::abs(rep.p_total - ref.p_total));
        }
    }
    return c.finish();
}

Matrix2 random_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);
    Amplitude a{gauss(rng), gauss(rng)};
    Amplitude b{gauss(rng), gauss(rng)};
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    const Amplitude g = std::polar(1.0, phase(rng));
    return {{{g * a, -g * std::conj(b)}, {b, std::conj(a)}}};
}

FockState random_state(const RegistryPtr &registry, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> terms(1, 6);
    std::uniform_int_distribution<unsigned> occupancy(0, 2);
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

CheckResult check_unitarity() {
    Check c("unitarity", kUnitarityTolerance);
    auto registry = std::make_shared<ModeRegistry>();
    for (std::uint16_t k = 0; k < 4; ++k) {
        registry->register_mode({k, Channel::A1, TimeBin::Short, Polarization::H});
    }
    std::mt19937_64 rng(20260115);
    std::uniform_int_distribution<ModeIndex> mode(0, registry->size() - 1);
    for (int trial = 0; trial < kUnitarityTrials; ++trial) {
        const Matrix2 u = random_unitary(rng);
        if (!is_unitary(u)) {
            c.flag("sampled matrix is not unitary");
        }
        const FockState psi = random_state(registry, rng);
        const ModeIndex m1 = mode(rng);
        ModeIndex m2 = mode(rng);
        while (m2 == m1) {
            m2 = mode(rng);
        }
        const FockState out = apply_two_mode_unitary(psi, m1, m2, u);
        c.residual(std::abs(squared_norm(out) - 1.0));
        const FockState back = apply_two_mode_unitary(out, m1, m2, adjoint(u));
        c.residual(std::abs(1.0 - fidelity(psi, back)));
    }
    c.note(std::to_string(kUnitarityTrials) + " random states and unitaries");
    return c.finish();
}

CheckResult check_photon_conservation(const VerifyOptions &options) {
    Check c("photon_conservation", kUnitarityTolerance);
    for (int n : {2, 3}) {
        ProtocolConfig cfg{n, 0.3, 0.6, TimeBinQubit{}};
        const Circuit circuit = build_amplifier(cfg, {options.inject_bs_sign_fault});
        const Ensemble evolved = run_circuit(prepare_input(cfg, circuit), circuit);
        for (const auto &b : evolved.branches()) {
            const unsigned want =
                static_cast<unsigned>(2 * n + (b.kind == BranchKind::Signal ? 1 : 0));
            double outside = 0.0;
            for (const auto &[count, p] : photon_number_distribution(b.state)) {
                if (count != want) {
                    outside += p;
                }
            }
            c.residual(outside);
            c.residual(std::abs(squared_norm(b.state) - 1.0));
        }
    }
    return c.finish();
}

CheckResult check_hong_ou_mandel() {
    Check c("hong_ou_mandel", kUnitarityTolerance);
    auto registry = std::make_shared<ModeRegistry>();
    const ModeIndex a = registry->register_mode({0, Channel::A3, TimeBin::Short, Polarization::H});
    const ModeIndex b = registry->register_mode({0, Channel::A4, TimeBin::Short, Polarization::H});
    const FockState in = FockState::basis(registry, OccupationVector::of({a, b}));
    const FockState out = apply_two_mode_unitary(in, a, b, bs5050_matrix());
    OccupationVector two_a;
    two_a.set(a, 2);
    OccupationVector two_b;
    two_b.set(b, 2);
    c.residual(std::norm(out.amplitude(OccupationVector::of({a, b}))));
    c.residual(std::abs(std::norm(out.amplitude(two_a)) - 0.5));
    c.residual(std::abs(std::norm(out.amplitude(two_b)) - 0.5));
    return c.finish();
}

CheckResult check_measurement_completeness(const std::vector<GridPoint> &points,
                                           double tol) {
    Check c("measurement_completeness", std::min(kStrict, tol));
    for (const auto &p : points) {
        c.residual(std::abs(p.sim.signal.completeness - 1.0));
        c.residual(std::abs(p.sim.vacuum.completeness - 1.0));
    }
    return c.finish();
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions &options) {
    if (options.max_n < 2) {
        fail(ErrorCode::InvalidArgument, "max_n must be at least 2");
    }
    if (!(options.tolerance > 0.0)) {
        fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    }
    const double tol = options.tolerance;
    const auto points = simulate_grid(options);
    std::vector<CheckResult> results;
    results.push_back(check_branch_probabilities(points, tol));
    results.push_back(check_fidelity_formula(points, tol));
    results.push_back(check_gain_curves(points, tol));
    results.push_back(check_p_total_curves(points, tol));
    results.push_back(check_pattern_uniformity(points, tol));
    results.push_back(check_corrections(options, tol));
    results.push_back(check_alpha_beta_invariance(options, tol));
    results.push_back(check_unitarity());
    results.push_back(check_photon_conservation(options));
    results.push_back(check_hong_ou_mandel());
    results.push_back(check_measurement_completeness(points, tol));
    return results;
}

} // namespace wamp
