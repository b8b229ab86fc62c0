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
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "wamp/wamp.h"

namespace {

enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kInvariant = 3,
    kIo = 4,
};

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void usage(const std::string &message) { throw Failure{kUsage, message}; }

void check(wamp_status status) {
    switch (status) {
    case WAMP_OK:
        return;
    case WAMP_ERR_INVALID_ARGUMENT:
        throw Failure{kUsage, wamp_last_error()};
    case WAMP_ERR_INVARIANT_VIOLATION:
        throw Failure{kInvariant, wamp_last_error()};
    case WAMP_ERR_IO:
        throw Failure{kIo, wamp_last_error()};
    default:
        throw Failure{kInternal, wamp_last_error()};
    }
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

double parse_double(const std::string &text, const std::string &what) {
    double value = 0.0;
    const char *first = text.data();
    const char *last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        usage(fmt::format("{}: '{}' is not a number", what, text));
    }
    return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

wamp_complex parse_complex(const std::string &text, const std::string &what) {
    const auto parts = split(text, ',');
    if (parts.size() > 2) {
        usage(what + " expects re,im");
    }
    wamp_complex z{parse_double(parts[0], what), 0.0};
    if (parts.size() == 2) {
        z.im = parse_double(parts[1], what);
    }
    return z;
}

std::vector<double> parse_doubles(const std::string &text, const std::string &what) {
    std::vector<double> values;
    if (text.empty()) {
        return values;
    }
    for (const auto &p : split(text, ',')) {
        values.push_back(parse_double(p, what));
    }
    return values;
}

std::vector<int> parse_ints(const std::string &text, const std::string &what) {
    std::vector<int> values;
    if (text.empty()) {
        return values;
    }
    for (const auto &p : split(text, ',')) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), value);
        if (ec != std::errc() || ptr != p.data() + p.size()) {
            usage(fmt::format("{}: '{}' is not an integer", what, p));
        }
        values.push_back(value);
    }
    return values;
}

/// "start:stop:step" or a comma list.
std::vector<double> parse_grid(const std::string &text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        return parse_doubles(text, "--t-grid");
    }
    if (parts.size() != 3) {
        usage("--t-grid expects start:stop:step or a comma list");
    }
    const double start = parse_double(parts[0], "--t-grid");
    const double stop = parse_double(parts[1], "--t-grid");
    const double step = parse_double(parts[2], "--t-grid");
    std::size_t count = 0;
    check(wamp_make_grid(start, stop, step, nullptr, 0, &count));
    std::vector<double> grid(count);
    check(wamp_make_grid(start, stop, step, grid.data(), grid.size(), &count));
    return grid;
}

unsigned workers_from_env() {
    const char *raw = std::getenv("WAMP_WORKERS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    unsigned value = 0;
    const char *last = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, last, value);
    if (ec != std::errc() || ptr != last || value == 0) {
        usage(fmt::format("WAMP_WORKERS must be a positive integer, got '{}'", raw));
    }
    return value;
}

std::string json_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                out += fmt::format("\\u{:04x}", static_cast<unsigned>(c));
            } else {
                out += c;
            }
        }
    }
    return out;
}

class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) {
                throw Failure{kIo, fmt::format("cannot open '{}' for writing: {}", path,
                                               std::strerror(errno))};
            }
            path_ = path;
        }
    }

    void write(const std::string &text) {
        if (path_.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
            return;
        }
        file_ << text;
    }

    void close() {
        if (path_.empty()) {
            if (std::fflush(stdout) != 0) {
                throw Failure{kIo, "failed to write standard output"};
            }
            return;
        }
        file_.close();
        if (!file_) {
            throw Failure{kIo, fmt::format("failed to write '{}'", path_)};
        }
    }

  private:
    std::string path_;
    std::ofstream file_;
};

struct SimulateArgs {
    int n = 3;
    double t = 0.25;
    double eta = 0.6;
    std::string alpha = "0.70710678118654752,0";
    std::string beta = "0.70710678118654752,0";
    std::string format = "json";
    std::string out;
    bool fault = false;
};

struct Quantities {
    double p1, p2, p_total, eta_prime;
    std::optional<double> gain;
};

int run_simulate(const SimulateArgs &args) {
    const wamp_complex alpha = parse_complex(args.alpha, "--alpha");
    const wamp_complex beta = parse_complex(args.beta, "--beta");
    wamp_config *config = nullptr;
    check(wamp_config_create(args.n, args.t, args.eta, alpha, beta, &config));
    std::unique_ptr<wamp_config, decltype(&wamp_config_destroy)> config_guard(
        config, wamp_config_destroy);

    wamp_analytic_values a{};
    check(wamp_analytic(args.n, args.t, args.eta, &a));
    Output output(args.out);

    wamp_report *report = nullptr;
    check(wamp_simulate(config, args.fault ? WAMP_FLAG_INJECT_BS_SIGN_FAULT : 0U, &report));
    std::unique_ptr<wamp_report, decltype(&wamp_report_destroy)> report_guard(
        report, wamp_report_destroy);
    wamp_summary s{};
    check(wamp_report_summary(report, &s));

    const Quantities sim{s.p1, s.p2, s.p_total, s.eta_prime,
                         s.has_gain ? std::optional<double>(s.gain) : std::nullopt};
    const Quantities ref{a.p1, a.p2, a.p_total, a.eta_prime,
                         a.has_gain ? std::optional<double>(a.gain) : std::nullopt};
    auto opt = [](std::optional<double> x) { return x ? num(*x) : std::string("null"); };
    auto diff = [](std::optional<double> x, std::optional<double> y) {
        return x && y ? std::optional<double>(std::abs(*x - *y)) : std::nullopt;
    };
    const Quantities delta{std::abs(sim.p1 - ref.p1), std::abs(sim.p2 - ref.p2),
                           std::abs(sim.p_total - ref.p_total),
                           std::abs(sim.eta_prime - ref.eta_prime), diff(sim.gain, ref.gain)};

    if (args.format == "csv") {
        auto csv_opt = [&](std::optional<double> x) { return x ? num(*x) : std::string(); };
        std::string doc =
            "n,t,eta,p1,p2,p_total,eta_prime,gain,uniformity_residual,"
            "min_corrected_fidelity,completeness_residual,p1_analytic,p2_analytic,"
            "p_total_analytic,eta_prime_analytic,gain_analytic,p1_abs_diff,p2_abs_diff,"
            "p_total_abs_diff,eta_prime_abs_diff,gain_abs_diff\n";
        doc += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                           args.n, num(args.t), num(args.eta), num(sim.p1), num(sim.p2),
                           num(sim.p_total), num(sim.eta_prime), csv_opt(sim.gain),
                           num(s.uniformity_residual), num(s.min_corrected_fidelity),
                           num(s.completeness_residual), num(ref.p1), num(ref.p2),
                           num(ref.p_total), num(ref.eta_prime), csv_opt(ref.gain),
                           num(delta.p1), num(delta.p2), num(delta.p_total),
                           num(delta.eta_prime), csv_opt(delta.gain));
        output.write(doc);
        output.close();
        return kOk;
    }

    auto block = [&](const Quantities &q) {
        return fmt::format("{{\"p1\": {}, \"p2\": {}, \"p_total\": {}, \"eta_prime\": {}, "
                           "\"gain\": {}}}",
                           num(q.p1), num(q.p2), num(q.p_total), num(q.eta_prime),
                           opt(q.gain));
    };
    std::string doc = "{\n";
    doc += fmt::format("  \"n\": {},\n  \"t\": {},\n  \"eta\": {},\n", args.n, num(args.t),
                       num(args.eta));
    doc += fmt::format("  \"alpha\": [{}, {}],\n  \"beta\": [{}, {}],\n", num(alpha.re),
                       num(alpha.im), num(beta.re), num(beta.im));
    doc += fmt::format("  \"p1\": {},\n  \"p2\": {},\n  \"p_total\": {},\n", num(sim.p1),
                       num(sim.p2), num(sim.p_total));
    doc += fmt::format("  \"eta_prime\": {},\n  \"gain\": {},\n", num(sim.eta_prime),
                       opt(sim.gain));
    doc += fmt::format("  \"uniformity_residual\": {},\n", num(s.uniformity_residual));
    doc += fmt::format("  \"min_corrected_fidelity\": {},\n", num(s.min_corrected_fidelity));
    doc += fmt::format("  \"completeness_residual\": {},\n", num(s.completeness_residual));
    doc += fmt::format("  \"analytic\": {},\n", block(ref));
    doc += fmt::format("  \"abs_diff\": {},\n", block(delta));
    doc += "  \"patterns\": [";
    for (std::size_t i = 0; i < s.pattern_count; ++i) {
        wamp_pattern_outcome p{};
        check(wamp_report_pattern(report, i, &p));
        doc += fmt::format("{}\n    {{\"pattern\": \"{}\", \"p_signal\": {}, \"p_vacuum\": {}, "
                           "\"corrected_fidelity\": {}}}",
                           i == 0 ? "" : ",", p.label, num(p.p_signal), num(p.p_vacuum),
                           num(p.corrected_fidelity));
    }
    doc += "\n  ]\n}\n";
    output.write(doc);
    output.close();
    return kOk;
}

struct SweepArgs {
    std::string n = "3";
    std::string t_grid;
    std::string eta;
    bool simulate = false;
    std::string out;
};

int run_sweep(const SweepArgs &args) {
    const auto ns = parse_ints(args.n, "--n");
    const auto ts = parse_grid(args.t_grid);
    const auto etas = parse_doubles(args.eta, "--eta");
    if (ns.empty() || ts.empty() || etas.empty()) {
        usage("sweep needs non-empty --n, --t-grid and --eta");
    }
    const unsigned workers = workers_from_env();
    wamp_sweep *sweep = nullptr;
    check(wamp_sweep_run(ns.data(), ns.size(), ts.data(), ts.size(), etas.data(), etas.size(),
                         args.simulate ? 1 : 0, workers, &sweep));
    std::unique_ptr<wamp_sweep, decltype(&wamp_sweep_destroy)> guard(sweep,
                                                                     wamp_sweep_destroy);
    Output output(args.out);
    std::string doc = "n,t,eta,p1,p2,p_total,eta_prime,gain,source\n";
    const std::size_t rows = wamp_sweep_row_count(sweep);
    for (std::size_t i = 0; i < rows; ++i) {
        wamp_sweep_row r{};
        check(wamp_sweep_get_row(sweep, i, &r));
        doc += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.n, num(r.t), num(r.eta),
                           num(r.p1), num(r.p2), num(r.p_total), num(r.eta_prime),
                           num(r.gain),
                           r.source == WAMP_SOURCE_ANALYTIC ? "analytic" : "simulated");
    }
    output.write(doc);
    output.close();
    return kOk;
}

struct VerifyArgs {
    int max_n = 5;
    double tolerance = 1e-9;
    std::string format = "text";
    bool fault = false;
};

int run_verify(const VerifyArgs &args) {
    const unsigned workers = workers_from_env();
    wamp_verify *verify = nullptr;
    check(wamp_verify_run(args.max_n, args.tolerance, workers,
                          args.fault ? WAMP_FLAG_INJECT_BS_SIGN_FAULT : 0U, &verify));
    std::unique_ptr<wamp_verify, decltype(&wamp_verify_destroy)> guard(verify,
                                                                       wamp_verify_destroy);
    const std::size_t count = wamp_verify_check_count(verify);
    std::string doc = args.format == "json" ? "{\n  \"checks\": [" : "";
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        wamp_check c{};
        check(wamp_verify_check(verify, i, &c));
        worst = std::max(worst, c.max_residual);
        if (args.format == "json") {
            doc += fmt::format("{}\n    {{\"name\": \"{}\", \"passed\": {}, \"max_residual\": "
                               "{}, \"tolerance\": {}, \"detail\": \"{}\"}}",
                               i == 0 ? "" : ",", c.name, c.passed ? "true" : "false",
                               num(c.max_residual), num(c.tolerance),
                               json_escape(c.detail));
        } else {
            doc += fmt::format("{} {:<26} max_residual={:.3e} tolerance={:.1e}{}{}\n",
                               c.passed ? "PASS" : "FAIL", c.name, c.max_residual,
                               c.tolerance, *c.detail ? "  " : "", c.detail);
        }
    }
    const bool passed = wamp_verify_all_passed(verify) != 0;
    if (args.format == "json") {
        doc += fmt::format("\n  ],\n  \"passed\": {},\n  \"max_residual\": {}\n}}\n",
                           passed ? "true" : "false", num(worst));
    } else {
        doc += fmt::format("{}: {} checks, max residual {:.3e}\n",
                           passed ? "ALL PASSED" : "FAILED", count, worst);
    }
    Output output("");
    output.write(doc);
    output.close();
    return passed ? kOk : kInvariant;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heralded amplification of single-photon W states of time-bin qubits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(wamp_version()));

    SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "Run one protocol instance");
    simulate->add_option("--n", sim.n, "Number of parties")->capture_default_str();
    simulate->add_option("--t", sim.t, "VBS transmission in (0,1)")->capture_default_str();
    simulate->add_option("--eta", sim.eta, "Input fidelity in [0,1]")->capture_default_str();
    simulate->add_option("--alpha", sim.alpha, "S_H amplitude as re,im")->capture_default_str();
    simulate->add_option("--beta", sim.beta, "L_V amplitude as re,im")->capture_default_str();
    simulate->add_option("--format", sim.format)
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    simulate->add_option("--out", sim.out, "Output path (default stdout)");
    simulate->add_flag("--inject-bs-sign-fault", sim.fault)->group("");

    SweepArgs sw;
    auto *sweep = app.add_subcommand("sweep", "Emit figure data over a parameter grid");
    sweep->add_option("--n", sw.n, "Comma list of party counts")->capture_default_str();
    sweep->add_option("--t-grid", sw.t_grid, "start:stop:step or comma list")->required();
    sweep->add_option("--eta", sw.eta, "Comma list of eta values")->required();
    sweep->add_flag("--simulate", sw.simulate, "Add simulated rows");
    sweep->add_option("--out", sw.out, "Output CSV path (default stdout)");

    VerifyArgs ver;
    auto *verify = app.add_subcommand("verify", "Run the self-check suite");
    verify->add_option("--max-n", ver.max_n, "Largest party count")->capture_default_str();
    verify->add_option("--tolerance", ver.tolerance)->capture_default_str();
    verify->add_option("--format", ver.format)
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    verify->add_flag("--inject-bs-sign-fault", ver.fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(sim);
        }
        if (sweep->parsed()) {
            return run_sweep(sw);
        }
        return run_verify(ver);
    } catch (const Failure &f) {
        fmt::print(stderr, "wamp: {}\n", f.message);
        return f.code;
    } catch (const std::exception &e) {
        fmt::print(stderr, "wamp: {}\n", e.what());
        return kInternal;
    }
}
