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
#include <doctest.h>

#include <algorithm>

#include "wamp/error.hpp"
#include "wamp/verify.hpp"

using namespace wamp;

namespace {

const CheckResult &named(const std::vector<CheckResult> &results, const std::string &name) {
    auto it = std::find_if(results.begin(), results.end(),
                           [&](const CheckResult &r) { return r.name == name; });
    REQUIRE(it != results.end());
    return *it;
}

} // namespace

TEST_CASE("self-check suite passes on the correct circuit") {
    VerifyOptions options;
    options.max_n = 3;
    const auto results = run_verification(options);
    CHECK(results.size() == 11);
    for (const auto &r : results) {
        INFO(r.name << ": " << r.max_residual << " " << r.detail);
        CHECK(r.passed);
        CHECK(r.max_residual <= r.tolerance);
        CHECK(r.max_residual < 1e-9);
    }
}

TEST_CASE("self-check suite flags a wrong splitter sign") {
    VerifyOptions options;
    options.max_n = 2;
    options.inject_bs_sign_fault = true;
    const auto results = run_verification(options);
    CHECK_FALSE(named(results, "correction_completeness").passed);
    CHECK_FALSE(named(results, "fidelity_formula").passed);
    CHECK_FALSE(named(results, "alpha_beta_invariance").passed);
    // A sign is a phase: it cannot change photon statistics.
    CHECK(named(results, "branch_probabilities").passed);
    CHECK(named(results, "pattern_uniformity").passed);
    CHECK(named(results, "unitarity").passed);
}

TEST_CASE("self-check options are validated") {
    CHECK_THROWS_AS(run_verification({1, 1e-9, 0, false}), Error);
    CHECK_THROWS_AS(run_verification({3, 0.0, 0, false}), Error);
}
