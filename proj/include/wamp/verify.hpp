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

namespace wamp {

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    /// Party counts 2..max_n enter the grid-wide checks.
    int max_n = 5;
    /// Loosest residual accepted by any check; checks with a stricter
    /// built-in tolerance keep theirs.
    double tolerance = 1e-9;
    /// Workers for the simulation grid, 0 = hardware concurrency.
    unsigned workers = 0;
    /// Negative control: flips the V-mode sign of party 0's 50:50 splitter.
    bool inject_bs_sign_fault = false;
};

/// Runs the full self-check suite. Never throws for a failing check; the
/// failure is reported in the result instead.
std::vector<CheckResult> run_verification(const VerifyOptions &options = {});

} // namespace wamp
