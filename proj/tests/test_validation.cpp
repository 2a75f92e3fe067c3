// SPDX-License-Identifier: Apache-2.0
//
// lharq: truncated L-HARQ status-update simulator and age analytics
// Copyright (C) 2026 The lharq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "lharq/validation.hpp"

using namespace lharq;
using namespace lharq::validation;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

const CheckResult& by_id(const std::vector<CheckResult>& rs, const std::string& id) {
    for (const auto& r : rs)
        if (r.id == id) return r;
    FAIL("no result with id " << id);
    return rs.front();
}

Options quick(std::vector<std::string> only) {
    Options o;
    o.quick = true;
    o.only = std::move(only);
    return o;
}

}  // namespace

TEST_CASE("quick run of the deterministic criteria passes", "[validation]") {
    std::vector<std::string> seen;
    const auto rs = run_all(quick({"1", "4", "8", "9"}), [&](const CheckResult& r) { seen.push_back(r.id); });
    REQUIRE(rs.size() == 4);
    CHECK(seen == std::vector<std::string>{"1", "4", "8", "9"});
    CHECK(all_passed(rs));
    CHECK(by_id(rs, "9").informational);
    CHECK_THAT(by_id(rs, "1").detail, ContainsSubstring("value=1.44"));
}

TEST_CASE("consistency check uses the conditional-depth hook", "[validation]") {
    const auto plain = run_all(quick({"2"}));
    REQUIRE(plain.size() == 3);
    CHECK_THAT(by_id(plain, "2").detail, ContainsSubstring("corrected=0.16 (ok)"));
    CHECK(by_id(plain, "2-protocol").passed);
    CHECK(by_id(plain, "2-divergence").informational);

    auto o = quick({"2"});
    o.corrected_cond_b = [](double p, int n) { return -cond_expected_b(p, n, AoeiMode::corrected); };
    const auto flipped = run_all(o);
    const auto& r = by_id(flipped, "2");
    CHECK_FALSE(r.passed);
    CHECK_THAT(r.detail, ContainsSubstring("(expected 0.16)"));
    CHECK_FALSE(all_passed(flipped));
}

TEST_CASE("determinism criterion", "[validation]") {
    const auto rs = run_all(quick({"10"}));
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].passed);
}

TEST_CASE("result lines", "[validation]") {
    CheckResult r = named("7", "trend suite");
    r.detail = "x";
    r.seconds = 1.234;
    CHECK(format_line(r) == "[FAIL] 7 trend suite -- x (1.23 s)");
    r.passed = true;
    CHECK_THAT(format_line(r), StartsWith("[PASS] 7"));
    r.informational = true;
    r.passed = false;
    CHECK_THAT(format_line(r), StartsWith("[INFO] 7"));
    CHECK(all_passed({r}));
    CHECK(all_passed({}));
}
