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

#include <algorithm>
#include <cmath>
#include <vector>

#include "lharq/channel.hpp"
#include "lharq/fbl.hpp"

using namespace lharq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Q(x) by composite Simpson on [x, x + 40] in extended precision.
long double q_oracle(long double x) {
    const int n = 200000;
    const long double h = 40.0L / n;
    auto f = [](long double t) { return std::exp(-t * t / 2.0L); };
    long double s = f(x) + f(x + 40.0L);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(x + i * h);
    return s * h / 3.0L / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
}

long double eps_oracle(long double g, long double rate, long double n) {
    const long double log2e = 1.44269504088896340735992468100189214L;
    const long double c = std::log(1.0L + g) * log2e;
    const long double v = (1.0L - 1.0L / ((1.0L + g) * (1.0L + g))) * log2e * log2e;
    return q_oracle((c - rate) / std::sqrt(v / n));
}

// Same normal approximation through erfc, for bank-sized loops.
long double eps_erfc(long double g, long double rate, long double n) {
    const long double log2e = 1.44269504088896340735992468100189214L;
    const long double c = std::log1p(g) * log2e;
    const long double v = (1.0L - 1.0L / ((1.0L + g) * (1.0L + g))) * log2e * log2e;
    return 0.5L * std::erfc((c - rate) / std::sqrt(v / n) / std::sqrt(2.0L));
}

std::vector<double> bank_for(double mean_snr_db, std::size_t n = 20000) {
    LinkBudget l;
    const ShadowedRicianParams p{0.126, 10.1, 0.835};
    l.sat_power_w = 1.0;
    l.sat_power_w = db_to_linear(mean_snr_db) / l.mean_snr(p);
    const SnrBank bank(ChannelSampler(p, l), n, 3);
    return {bank.samples().begin(), bank.samples().end()};
}

}  // namespace

TEST_CASE("error probability is one half at capacity", "[fbl]") {
    FbcParams f;
    f.rate = 1.3;
    CHECK_THAT(ff_error_prob(std::exp2(1.3) - 1.0, f), WithinAbs(0.5, 1e-12));
}

TEST_CASE("deep tail at high SNR", "[fbl]") {
    FbcParams f;
    f.rate = 0.5;
    f.blocklength = 2000;
    CHECK(ff_error_prob(30.0, f) < 1e-6);
}

TEST_CASE("error probability matches a quadrature Q oracle", "[fbl]") {
    FbcParams f;
    f.rate = 1.0;
    f.blocklength = 200;
    for (double g : {0.8, 1.0, 1.2, 3.0}) {
        const auto o = eps_oracle(g, 1.0, 200);
        INFO("gamma=" << g);
        CHECK_THAT(ff_error_prob(g, f), WithinRel(static_cast<double>(o), 1e-9));
    }
}

TEST_CASE("backtracking ratio matches an explicit Q ratio", "[fbl]") {
    FbcParams f;
    f.rate = 1.0;
    f.blocklength = 100;
    const auto o = eps_oracle(2.0, 1.0, 30.0) / eps_oracle(2.0, 1.0, 100.0);
    CHECK_THAT(bt_error_ratio(2.0, f, 0.3), WithinRel(static_cast<double>(o), 1e-8));
    // A shorter prior-information block only decodes worse above capacity.
    CHECK(bt_error_ratio(2.0, f, 0.3) > 1.0);
    CHECK(bt_error_prob(2.0, f, 0.3) == 1.0);
}

TEST_CASE("equal effective blocklengths give a unit ratio", "[fbl]") {
    FbcParams f;
    f.rate = 0.7;
    CHECK_THAT(bt_error_ratio(1.1, f, 1.0), WithinRel(1.0, 1e-15));
    const auto bank = bank_for(3.0);
    CHECK_THAT(bt_error_prob(bank, f, 1.0), WithinRel(1.0, 1e-15));
}

TEST_CASE("backtracking error stays in [0, 1] and does not fall with rho", "[fbl][property]") {
    FbcParams f;
    f.rate = 1.0;
    f.blocklength = 100;
    const auto bank = bank_for(2.0);
    for (double g : {0.5, 0.9, 1.5, 2.0}) {
        double prev = -1.0;
        for (double rho = 0.05; rho <= 1.0 + 1e-12; rho += 0.05) {
            const double v = bt_error_prob(g, f, std::min(rho, 1.0));
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
    double prev = -1.0;
    for (double rho = 0.1; rho <= 1.0 + 1e-12; rho += 0.1) {
        const double v = bt_error_prob(bank, f, std::min(rho, 1.0));
        CHECK(v <= 1.0);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("backtracking error is undefined when feedforward never fails", "[fbl]") {
    FbcParams f;
    f.rate = 0.2;
    f.blocklength = 2000;
    CHECK_THROWS_AS(bt_error_ratio(1e6, f, 0.3), conditional_undefined);
    const std::vector<double> bank(10, 1e6);
    CHECK_THROWS_AS(bt_error_prob(bank, f, 0.3), conditional_undefined);
    CHECK_THROWS_AS(bt_error_prob(1.0, f, 0.0), invalid_parameter);
}

TEST_CASE("empty Monte Carlo banks are rejected", "[fbl]") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(ff_error_prob(empty, FbcParams{}), invalid_parameter);
    CHECK_THROWS_AS(threshold_error_prob(empty, 1.0), invalid_parameter);
    CHECK_THROWS_AS(bt_error_prob(empty, FbcParams{}, 0.3), invalid_parameter);
}

TEST_CASE("threshold error limits and median", "[fbl]") {
    const auto bank = bank_for(5.0);
    CHECK(threshold_error_prob(bank, 0.0) == 0.0);
    CHECK(threshold_error_prob(bank, 1e300) == 1.0);
    // Median by bisection on the empirical CDF.
    double lo = 0.0, hi = *std::max_element(bank.begin(), bank.end());
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (threshold_error_prob(bank, mid) < 0.5 ? lo : hi) = mid;
    }
    const double se = 0.5 / std::sqrt(static_cast<double>(bank.size()));
    CHECK_THAT(threshold_error_prob(bank, hi), WithinAbs(0.5, 3.0 * se));
}

TEST_CASE("error probabilities are monotone on a shared bank", "[fbl][property]") {
    const auto base = bank_for(0.0);
    FbcParams f;
    f.blocklength = 100;
    double prev_ff = 2.0, prev_th = 2.0;
    for (double scale_db = -6.0; scale_db <= 12.0; scale_db += 2.0) {
        std::vector<double> b(base);
        for (auto& x : b) x *= db_to_linear(scale_db);
        const double ff = ff_error_prob(b, f), th = threshold_error_prob(b, 1.0);
        CHECK(ff <= prev_ff);
        CHECK(th <= prev_th);
        prev_ff = ff;
        prev_th = th;
    }
    double prev = -1.0;
    for (double r = 0.1; r <= 3.0; r += 0.1) {
        f.rate = r;
        const double v = ff_error_prob(base, f);
        CHECK(v >= prev);
        prev = v;
    }
    prev = -1.0;
    for (double g = 0.0; g <= 5.0; g += 0.25) {
        const double v = threshold_error_prob(base, g);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("rate adaptation", "[fbl]") {
    const auto bank = bank_for(3.0);
    FbcParams f;
    f.blocklength = 200;
    const std::vector<double> one{0.8};
    CHECK(rate_adapt(bank, one, f) == 0.8);
    const std::vector<double> perfect(100, 1e9);
    const std::vector<double> rates{0.2, 1.0, 2.5};
    CHECK(rate_adapt(perfect, rates, f) == 2.5);
    // Exhaustive oracle over R (1 - eps).
    double best = -1.0, arg = 0.0;
    for (double r : rates) {
        double e = 0.0;
        for (double x : bank) e += static_cast<double>(eps_erfc(x, r, 200));
        const double thr = r * (1.0 - e / bank.size());
        if (thr > best) {
            best = thr;
            arg = r;
        }
    }
    CHECK(rate_adapt(bank, rates, f) == arg);
    CHECK_THROWS_AS(rate_adapt(bank, std::vector<double>{}, f), invalid_parameter);
}
