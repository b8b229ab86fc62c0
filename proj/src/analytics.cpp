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
#include "wamp/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "wamp/error.hpp"
#include "wamp/heralding.hpp"

namespace wamp {

namespace {

void check_t_open(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        fail(ErrorCode::InvalidArgument, "t must lie in (0,1)");
    }
}

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "eta must lie in [0,1]");
    }
}

} // namespace

SimulatedPoint simulate_point(int n, double t, AmplifierOptions options) {
    ProtocolConfig cfg{n, t, 0.5, TimeBinQubit{}};
    Circuit circuit = build_amplifier(cfg, options);
    const Ensemble evolved = run_circuit(prepare_input(cfg, circuit), circuit);
    return {analyze_branch(evolved.find(BranchKind::Signal)->state, BranchKind::Signal,
                           circuit, cfg.qubit),
            analyze_branch(evolved.find(BranchKind::Vacuum)->state, BranchKind::Vacuum,
                           circuit, cfg.qubit),
            circuit};
}

double p1_analytic(double t, int n) {
    return std::pow(t, 2 * n - 1) * (1.0 - t);
}

double p2_analytic(double t, int n) { return std::pow(t, 2 * n); }

double eta_prime_analytic(double eta, double t) {
    check_eta(eta);
    const double denom = eta - 2.0 * eta * t + t;
    if (!(denom > 0.0)) {
        fail(ErrorCode::InvalidArgument, "eta' is undefined at eta = t = 0");
    }
    return eta * (1.0 - t) / denom;
}

double gain_analytic(double eta, double t) {
    check_eta(eta);
    if (eta == 0.0) {
        fail(ErrorCode::InvalidArgument, "gain is undefined at eta = 0");
    }
    return (1.0 - t) / (eta * (1.0 - t) + (1.0 - eta) * t);
}

double p_total_analytic(double eta, double t, int n) {
    check_eta(eta);
    if (n < 2) {
        fail(ErrorCode::InvalidArgument, "p_total needs n >= 2");
    }
    return std::pow(t, 2 * n - 1) * (eta - 2.0 * eta * t + t);
}

double gain_limit_low_t(double eta) {
    check_eta(eta);
    if (eta == 0.0) {
        fail(ErrorCode::InvalidArgument, "gain is undefined at eta = 0");
    }
    return 1.0 / eta;
}

double gain_limit_high_t(double eta) {
    check_eta(eta);
    if (eta == 0.0) {
        fail(ErrorCode::InvalidArgument, "gain is undefined at eta = 0");
    }
    return eta == 1.0 ? 1.0 : 0.0;
}

double iterate_eta_prime(double eta, double t, int rounds) {
    if (rounds < 0) {
        fail(ErrorCode::InvalidArgument, "rounds must be non-negative");
    }
    for (int i = 0; i < rounds; ++i) {
        eta = eta_prime_analytic(eta, t);
    }
    return eta;
}

std::string to_string(RowSource source) {
    return source == RowSource::Analytic ? "analytic" : "simulated";
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        fail(ErrorCode::InvalidArgument, "grid needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(start + static_cast<double>(i) * step);
    }
    return grid;
}

bool simulation_resolves(double t, int n) {
    return std::pow(t / 2.0, n) >= 10.0 * kPruneThreshold;
}

std::vector<SweepRow> sweep(const SweepRequest &request) {
    if (request.n_list.empty() || request.t_grid.empty() || request.eta_list.empty()) {
        fail(ErrorCode::InvalidArgument, "sweep grids must be non-empty");
    }
    for (int n : request.n_list) {
        if (n < 2) {
            fail(ErrorCode::InvalidArgument, "sweep needs n >= 2");
        }
    }
    for (double eta : request.eta_list) {
        if (!(eta > 0.0 && eta <= 1.0)) {
            fail(ErrorCode::InvalidArgument, "sweep eta values must lie in (0,1]");
        }
    }
    std::vector<double> ts;
    ts.reserve(request.t_grid.size());
    for (double t : request.t_grid) {
        check_t_open(t);
        ts.push_back(std::clamp(t, kSweepTMin, kSweepTMax));
    }

    const std::size_t nt = ts.size();
    std::vector<SimulatedPoint> sims;
    if (request.include_simulation) {
        for (int n : request.n_list) {
            for (double t : ts) {
                if (!simulation_resolves(t, n)) {
                    fail(ErrorCode::InvalidArgument,
                         "t = " + std::to_string(t) + " at n = " + std::to_string(n) +
                             " is below the simulator's amplitude resolution");
                }
            }
        }
        std::vector<std::optional<SimulatedPoint>> slots(request.n_list.size() * nt);
        parallel_for(slots.size(), request.workers, [&](std::size_t i) {
            slots[i] = simulate_point(request.n_list[i / nt], ts[i % nt]);
        });
        sims.reserve(slots.size());
        for (auto &s : slots) {
            sims.push_back(std::move(*s));
        }
    }

    std::vector<SweepRow> rows;
    for (std::size_t ni = 0; ni < request.n_list.size(); ++ni) {
        const int n = request.n_list[ni];
        for (double eta : request.eta_list) {
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const double t = ts[ti];
                rows.push_back({n, t, eta, p1_analytic(t, n), p2_analytic(t, n),
                                p_total_analytic(eta, t, n), eta_prime_analytic(eta, t),
                                gain_analytic(eta, t), RowSource::Analytic});
                if (!request.include_simulation) {
                    continue;
                }
                const auto &sim = sims[ni * nt + ti];
                const auto report = combine(sim.signal, sim.vacuum, sim.circuit, eta);
                rows.push_back({n, t, eta, report.p1, report.p2, report.p_total,
                                report.eta_prime, report.gain.value_or(0.0),
                                RowSource::Simulated});
            }
        }
    }
    return rows;
}

} // namespace wamp
