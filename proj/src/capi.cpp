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
#include "wamp/wamp.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "wamp/analytics.hpp"
#include "wamp/error.hpp"
#include "wamp/heralding.hpp"
#include "wamp/verify.hpp"

struct wamp_config {
    wamp::ProtocolConfig cfg;
};

struct wamp_report {
    wamp::HeraldReport report;
    std::vector<std::string> labels;
};

struct wamp_sweep {
    std::vector<wamp::SweepRow> rows;
};

struct wamp_verify {
    std::vector<wamp::CheckResult> checks;
};

namespace {

thread_local std::string last_error;

wamp_status status_for(wamp::ErrorCode code) {
    switch (code) {
    case wamp::ErrorCode::InvalidArgument:
        return WAMP_ERR_INVALID_ARGUMENT;
    case wamp::ErrorCode::Io:
        return WAMP_ERR_IO;
    case wamp::ErrorCode::InvariantViolation:
    case wamp::ErrorCode::OverlappingSupport:
    case wamp::ErrorCode::NonUnitary:
    case wamp::ErrorCode::UnregisteredMode:
    case wamp::ErrorCode::OccupancyOverflow:
        return WAMP_ERR_INVARIANT_VIOLATION;
    }
    return WAMP_ERR_INTERNAL;
}

wamp_status set_error(wamp_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

template <typename Fn>
wamp_status guarded(Fn &&fn) {
    try {
        last_error.clear();
        fn();
        return WAMP_OK;
    } catch (const wamp::Error &e) {
        return set_error(status_for(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return set_error(WAMP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return set_error(WAMP_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(WAMP_ERR_INTERNAL, "unknown error");
    }
}

wamp_status null_argument(const char *what) {
    return set_error(WAMP_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

wamp::AmplifierOptions amplifier_options(unsigned flags) {
    return {(flags & WAMP_FLAG_INJECT_BS_SIGN_FAULT) != 0};
}

} // namespace

extern "C" {

const char *wamp_last_error(void) { return last_error.c_str(); }

const char *wamp_version(void) { return WAMP_VERSION_STRING; }

wamp_status wamp_config_create(int n_parties, double t, double eta, wamp_complex alpha,
                               wamp_complex beta, wamp_config **out) {
    if (out == nullptr) {
        return null_argument("out");
    }
    *out = nullptr;
    return guarded([&] {
        wamp::ProtocolConfig cfg{n_parties, t, eta,
                                 wamp::TimeBinQubit::make({alpha.re, alpha.im},
                                                          {beta.re, beta.im})};
        cfg.validate();
        *out = new wamp_config{cfg};
    });
}

void wamp_config_destroy(wamp_config *config) { delete config; }

wamp_status wamp_simulate(const wamp_config *config, unsigned flags, wamp_report **out) {
    if (config == nullptr || out == nullptr) {
        return null_argument("config and out");
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<wamp_report>();
        handle->report = wamp::simulate(config->cfg, amplifier_options(flags));
        for (const auto &p : handle->report.patterns) {
            handle->labels.push_back(p.pattern.to_string());
        }
        *out = handle.release();
    });
}

void wamp_report_destroy(wamp_report *report) { delete report; }

wamp_status wamp_report_summary(const wamp_report *report, wamp_summary *out) {
    if (report == nullptr || out == nullptr) {
        return null_argument("report and out");
    }
    const auto &r = report->report;
    *out = wamp_summary{r.n_parties,
                        r.eta,
                        r.p1,
                        r.p2,
                        r.p_total,
                        r.eta_prime,
                        r.gain.has_value() ? 1 : 0,
                        r.gain.value_or(0.0),
                        r.uniformity_residual,
                        r.min_corrected_fidelity,
                        r.completeness_residual,
                        r.patterns.size()};
    return WAMP_OK;
}

wamp_status wamp_report_pattern(const wamp_report *report, size_t index,
                                wamp_pattern_outcome *out) {
    if (report == nullptr || out == nullptr) {
        return null_argument("report and out");
    }
    if (index >= report->report.patterns.size()) {
        return set_error(WAMP_ERR_OUT_OF_RANGE, "pattern index out of range");
    }
    const auto &p = report->report.patterns[index];
    *out = {report->labels[index].c_str(), p.p_signal, p.p_vacuum, p.corrected_fidelity};
    return WAMP_OK;
}

wamp_status wamp_analytic(int n_parties, double t, double eta, wamp_analytic_values *out) {
    if (out == nullptr) {
        return null_argument("out");
    }
    return guarded([&] {
        wamp::ProtocolConfig{n_parties, t, eta, wamp::TimeBinQubit{}}.validate();
        wamp_analytic_values v{};
        v.p1 = wamp::p1_analytic(t, n_parties);
        v.p2 = wamp::p2_analytic(t, n_parties);
        v.p_total = wamp::p_total_analytic(eta, t, n_parties);
        v.eta_prime = wamp::eta_prime_analytic(eta, t);
        if (eta > 0.0) {
            v.has_gain = 1;
            v.gain = wamp::gain_analytic(eta, t);
        }
        *out = v;
    });
}

wamp_status wamp_make_grid(double start, double stop, double step, double *values,
                           size_t capacity, size_t *count) {
    if (count == nullptr) {
        return null_argument("count");
    }
    return guarded([&] {
        const auto grid = wamp::make_grid(start, stop, step);
        *count = grid.size();
        if (values != nullptr) {
            for (size_t i = 0; i < grid.size() && i < capacity; ++i) {
                values[i] = grid[i];
            }
        }
    });
}

wamp_status wamp_sweep_run(const int *n_list, size_t n_count, const double *t_grid,
                           size_t t_count, const double *eta_list, size_t eta_count,
                           int include_simulation, unsigned workers, wamp_sweep **out) {
    if (out == nullptr) {
        return null_argument("out");
    }
    *out = nullptr;
    if ((n_count > 0 && n_list == nullptr) || (t_count > 0 && t_grid == nullptr) ||
        (eta_count > 0 && eta_list == nullptr)) {
        return null_argument("non-empty lists");
    }
    return guarded([&] {
        wamp::SweepRequest request;
        request.n_list.assign(n_list, n_list + n_count);
        request.t_grid.assign(t_grid, t_grid + t_count);
        request.eta_list.assign(eta_list, eta_list + eta_count);
        request.include_simulation = include_simulation != 0;
        request.workers = workers;
        auto handle = std::make_unique<wamp_sweep>();
        handle->rows = wamp::sweep(request);
        *out = handle.release();
    });
}

void wamp_sweep_destroy(wamp_sweep *sweep) { delete sweep; }

size_t wamp_sweep_row_count(const wamp_sweep *sweep) {
    return sweep == nullptr ? 0 : sweep->rows.size();
}

wamp_status wamp_sweep_get_row(const wamp_sweep *sweep, size_t index, wamp_sweep_row *out) {
    if (sweep == nullptr || out == nullptr) {
        return null_argument("sweep and out");
    }
    if (index >= sweep->rows.size()) {
        return set_error(WAMP_ERR_OUT_OF_RANGE, "row index out of range");
    }
    const auto &r = sweep->rows[index];
    *out = {r.n,         r.t,    r.eta,
            r.p1,        r.p2,   r.p_total,
            r.eta_prime, r.gain,
            r.source == wamp::RowSource::Analytic ? WAMP_SOURCE_ANALYTIC
                                                  : WAMP_SOURCE_SIMULATED};
    return WAMP_OK;
}

wamp_status wamp_verify_run(int max_n, double tolerance, unsigned workers, unsigned flags,
                            wamp_verify **out) {
    if (out == nullptr) {
        return null_argument("out");
    }
    *out = nullptr;
    return guarded([&] {
        wamp::VerifyOptions options;
        options.max_n = max_n;
        options.tolerance = tolerance;
        options.workers = workers;
        options.inject_bs_sign_fault = (flags & WAMP_FLAG_INJECT_BS_SIGN_FAULT) != 0;
        auto handle = std::make_unique<wamp_verify>();
        handle->checks = wamp::run_verification(options);
        *out = handle.release();
    });
}

void wamp_verify_destroy(wamp_verify *verify) { delete verify; }

size_t wamp_verify_check_count(const wamp_verify *verify) {
    return verify == nullptr ? 0 : verify->checks.size();
}

wamp_status wamp_verify_check(const wamp_verify *verify, size_t index, wamp_check *out) {
    if (verify == nullptr || out == nullptr) {
        return null_argument("verify and out");
    }
    if (index >= verify->checks.size()) {
        return set_error(WAMP_ERR_OUT_OF_RANGE, "check index out of range");
    }
    const auto &c = verify->checks[index];
    *out = {c.name.c_str(), c.passed ? 1 : 0, c.max_residual, c.tolerance, c.detail.c_str()};
    return WAMP_OK;
}

int wamp_verify_all_passed(const wamp_verify *verify) {
    if (verify == nullptr || verify->checks.empty()) {
        return 0;
    }
    for (const auto &c : verify->checks) {
        if (!c.passed) {
            return 0;
        }
    }
    return 1;
}

} // extern "C"
