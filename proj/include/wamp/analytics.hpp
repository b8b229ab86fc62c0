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

#include <string>
#include <vector>

#include "wamp/protocol.hpp"

namespace wamp {

// Closed forms for the heralded amplifier. None of them depend on alpha/beta,
// and eta' and g do not depend on the party count either.

/// Success probability of the signal branch, t^(2n-1) (1-t).
double p1_analytic(double t, int n);
/// Success probability of the vacuum branch, t^(2n).
double p2_analytic(double t, int n);
/// eta (1-t) / (eta - 2 eta t + t)
double eta_prime_analytic(double eta, double t);
/// (1-t) / (eta (1-t) + (1-eta) t); throws for eta == 0.
double gain_analytic(double eta, double t);
/// t^(2n-1) (eta - 2 eta t + t)
double p_total_analytic(double eta, double t, int n);

/// One-sided limit of the gain as t -> 0+, i.e. 1/eta.
double gain_limit_low_t(double eta);
/// One-sided limit of the gain as t -> 1-, i.e. 0.
double gain_limit_high_t(double eta);

/// Feeds the output fidelity back in `rounds` times (the output mixture has
/// the same form as the input one).
double iterate_eta_prime(double eta, double t, int rounds);

enum class RowSource { Analytic, Simulated };
std::string to_string(RowSource source);

struct SweepRow {
    int n = 0;
    double t = 0.0;
    double eta = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p_total = 0.0;
    double eta_prime = 0.0;
    double gain = 0.0;
    RowSource source = RowSource::Analytic;
};

struct SweepRequest {
    std::vector<int> n_list;
    std::vector<double> t_grid;
    std::vector<double> eta_list;
    bool include_simulation = false;
    /// 0 picks the hardware concurrency.
    unsigned workers = 0;
};

inline constexpr double kSweepTMin = 1e-3;
inline constexpr double kSweepTMax = 1.0 - 1e-3;

/// Rows ordered by (n, eta, t); for each point the analytic row precedes
/// the simulated one. Grid t values are clamped to [1e-3, 1-1e-3].
/// Simulated rows need eta > 0 (the gain is undefined otherwise).
std::vector<SweepRow> sweep(const SweepRequest &request);

/// Inclusive arithmetic grid start, start+step, ..., stop; computed by index
/// so that no drift accumulates.
std::vector<double> make_grid(double start, double stop, double step);

/// Smallest heralded amplitude the simulator can resolve against the
/// pruning threshold; simulated sweeps reject points below it.
bool simulation_resolves(double t, int n);

} // namespace wamp
