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

#include <cmath>
#include <random>
#include <vector>

#include "lharq/aoei.hpp"
#include "lharq/harq.hpp"
#include "lharq/oracle/brute_force.hpp"

using namespace lharq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Exact protocol E{B}: round of success n has probability p^{n-1}(1-p)/(1-p^K)
// and the walk back stops at the first failure or after n-1 recoveries.
double protocol_b_enumerated(double p, double r, int K) {
    long double total = 0.0L;
    for (int n = 1; n <= K; ++n) {
        const long double w = std::pow(p, n - 1) * (1.0L - p) / (1.0L - std::pow(p, K));
        long double eb = 0.0L;
        for (int b = 0; b < n - 1; ++b) eb += b * std::pow(1.0L - r, b) * r;
        eb += (n - 1) * std::pow(1.0L - r, n - 1);
        total += w * eb;
    }
    return static_cast<double>(total);
}

HarqConfig config(int K) {
    HarqConfig c;
    c.max_rounds = K;
    return c;
}

AoeiReport engine_report(double p_ff, double p_bt, int K, std::int64_t departures, std::uint64_t seed) {
    HarqEngine e(config(K), IidErrors{p_ff, p_bt}, seed);
    AoeiAccumulator acc;
    for (std::int64_t i = 0; i < departures; ++i) {
        const auto d = e.next_departure();
        acc.add(static_cast<double>(d.interdeparture), d.backtrack_depth);
    }
    return acc.report();
}

}  // namespace

TEST_CASE("interdeparture moments", "[aoei]") {
    for (int K : {1, 2, 5}) {
        CHECK(expected_y({0.0, 0.3, K}) == 1.0);
        CHECK(expected_y2({0.0, 0.3, K}) == 1.0);
    }
    for (double p : {0.1, 0.5, 0.9}) CHECK_THAT(expected_y({p, 0.2, 1}), WithinRel(1.0 / (1.0 - p), 1e-14));
    CHECK_THAT(expected_y({0.5, 0.2, 2}), WithinRel(2.0, 1e-15));
    CHECK_THAT(expected_y2({0.5, 0.2, 2}), WithinRel(6.0, 1e-15));
    CHECK_THROWS_AS(expected_y({1.0, 0.2, 2}), divergent_model);
    CHECK_THROWS_AS(expected_y2({1.5, 0.2, 2}), divergent_model);
}

TEST_CASE("K = 1 interdeparture mean against simulated circles", "[aoei][mc]") {
    const auto r = engine_report(0.6, 0.2, 1, 10000000, 21);
    CHECK_THAT(r.e_y, WithinRel(expected_y({0.6, 0.2, 1}), 0.01));
    CHECK(r.e_b == 0.0);
}

TEST_CASE("brute-force renewal oracle reproduces the moments", "[aoei][oracle]") {
    oracle::SequentialDraws draws(31);
    const auto bf = oracle::brute_force_caoei(0.5, 0.2, 2, 2000000, draws);
    CHECK_THAT(bf.mean_y, WithinRel(2.0, 0.01));
    CHECK_THAT(bf.mean_y2, WithinRel(6.0, 0.02));
    oracle::SequentialDraws zero(3);
    CHECK(oracle::brute_force_caoei(0.0, 0.4, 3, 1000, zero).delta_e == 0.5);
}

TEST_CASE("brute force and engine agree draw for draw", "[aoei][oracle]") {
    const std::uint64_t seed = 77;
    oracle::SlotIndexedDraws draws(seed);
    const auto bf = oracle::brute_force_caoei(0.5, 0.2, 3, 100000, draws);
    const auto en = engine_report(0.5, 0.2, 3, 100000, seed);
    CHECK_THAT(bf.delta_e, WithinRel(en.delta_e, 1e-12));
    CHECK_THAT(bf.mean_b, WithinRel(en.e_b, 1e-12));
    CHECK(bf.departures == en.departures);
}

TEST_CASE("conditional backtracking depth", "[aoei]") {
    for (auto mode : {AoeiMode::paper_literal, AoeiMode::corrected, AoeiMode::protocol})
        CHECK(cond_expected_b(0.2, 1, mode) == 0.0);
    CHECK_THAT(cond_expected_b(0.2, 2, AoeiMode::paper_literal), WithinAbs(1.44, 1e-12));
    CHECK_THAT(cond_expected_b(0.2, 2, AoeiMode::corrected), WithinAbs(0.16, 1e-15));
    CHECK_THAT(cond_expected_b(0.2, 2, AoeiMode::protocol), WithinAbs(0.8, 1e-15));
    CHECK(cond_expected_b(0.0, 5, AoeiMode::protocol) == 4.0);
    CHECK(cond_expected_b(0.0, 5, AoeiMode::corrected) == 0.0);
    CHECK_THROWS_AS(cond_expected_b(0.2, 0, AoeiMode::corrected), invalid_parameter);
}

TEST_CASE("arithmetic-geometric sum identity", "[aoei][property]") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> nd(1, 20);
    for (int t = 0; t < 1000; ++t) {
        const double a = u(rng), r = u(rng), q = std::max(u(rng), 1e-3);
        const int n = nd(rng);
        CHECK_THAT(arith_geom_sum_closed(a, r, q, n), WithinAbs(arith_geom_sum_direct(a, r, q, n), 1e-12));
    }
}

TEST_CASE("expected depth edge cases", "[aoei]") {
    for (int K : {1, 2, 4}) {
        INFO("K=" << K);
        CHECK_THAT(expected_b({0.5, 1.0, K}, AoeiMode::paper_literal), WithinAbs(0.0, 1e-15));
        CHECK_THAT(expected_b({0.5, 1.0, K}, AoeiMode::corrected), WithinAbs(0.0, 1e-15));
        CHECK_THAT(expected_b({0.5, 1.0, K}, AoeiMode::protocol), WithinAbs(0.0, 1e-15));
        CHECK(expected_b({0.0, 0.3, K}, AoeiMode::corrected) == 0.0);
        CHECK(expected_b({0.0, 0.3, K}, AoeiMode::protocol) == 0.0);
        // p_bt = 0 takes the direct-sum route in every mode.
        CHECK(std::isfinite(expected_b({0.5, 0.0, K}, AoeiMode::paper_literal)));
    }
}

TEST_CASE("frozen values at p_ff=0.5, p_bt=0.2, K=2", "[aoei]") {
    const IidErrorModel m{0.5, 0.2, 2};
    // Independent hand evaluations: corrected 0.5*0.5*0.16, protocol 0.5*0.8/0.75.
    CHECK_THAT(expected_b(m, AoeiMode::corrected), WithinAbs(0.04, 1e-15));
    CHECK_THAT(expected_b(m, AoeiMode::protocol), WithinAbs(0.4 * 0.5 / 0.75, 1e-15));
    CHECK_THAT(expected_b(m, AoeiMode::paper_literal), WithinAbs(0.393333333333333, 1e-12));
    CHECK_THAT(expected_b_paper_direct(m), WithinAbs(0.18, 1e-15));
    CHECK_THAT(average_caoei(m, AoeiMode::corrected).delta_e, WithinAbs(1.54, 1e-14));
    CHECK_THAT(average_caoei(m, AoeiMode::protocol).delta_e, WithinAbs(1.5 + 0.4 * 0.5 / 0.75, 1e-14));
}

TEST_CASE("protocol mode equals exact enumeration", "[aoei]") {
    for (double p : {0.1, 0.5, 0.9})
        for (double r : {0.05, 0.2, 0.8})
            for (int K : {1, 2, 3, 7})
                CHECK_THAT(expected_b({p, r, K}, AoeiMode::protocol),
                           WithinAbs(protocol_b_enumerated(p, r, K), 1e-13));
}

TEST_CASE("average C-AoEI reference values", "[aoei]") {
    for (double bt : {0.0, 0.5, 1.0}) CHECK(average_caoei({0.0, bt, 2}, AoeiMode::corrected).delta_e == 0.5);
    CHECK_THAT(average_caoei({0.5, 1.0, 2}, AoeiMode::corrected).delta_e, WithinAbs(1.5, 1e-15));
    CHECK_THROWS_AS(average_caoei({0.5, 0.2, 2}, AoeiMode::empirical), invalid_parameter);
}

TEST_CASE("protocol-mode closed form matches a long trace", "[aoei][mc]") {
    const auto emp = engine_report(0.5, 0.2, 3, 10000000, 22);
    CHECK_THAT(emp.e_b, WithinRel(expected_b({0.5, 0.2, 3}, AoeiMode::protocol), 0.01));
    const auto emp2 = engine_report(0.5, 0.2, 2, 10000000, 23);
    CHECK_THAT(emp2.delta_e, WithinRel(average_caoei({0.5, 0.2, 2}, AoeiMode::protocol).delta_e, 0.01));
}

// The corrected-mode expression is the direct sum over b of b q^b r with
// weight p^{n-1}(1-p); the walk-back engine stops after n-1 recoveries and
// conditions on eventual success, so these agreements do not hold.
TEST_CASE("corrected-mode closed form against simulation", "[aoei][mc][!mayfail]") {
    const auto emp = engine_report(0.5, 0.2, 3, 10000000, 24);
    CHECK_THAT(emp.e_b, WithinRel(expected_b({0.5, 0.2, 3}, AoeiMode::corrected), 0.01));
    const auto emp2 = engine_report(0.5, 0.2, 2, 10000000, 25);
    CHECK_THAT(emp2.delta_e, WithinRel(average_caoei({0.5, 0.2, 2}, AoeiMode::corrected).delta_e, 0.01));
}

TEST_CASE("empirical C-AoEI from traces", "[aoei]") {
    const std::vector<int> ones(100, 1), zeros(100, 0);
    CHECK(empirical_caoei(ones, zeros).delta_e == 0.5);
    const std::vector<double> y{2, 2}, b{1, 1};
    CHECK_THAT(empirical_caoei(y, b).delta_e, WithinAbs(1.375, 1e-15));
    const std::vector<double> y1{2}, b1{1};
    CHECK_THROWS_AS(empirical_caoei(y1, b1).delta_e, insufficient_data);
    CHECK_THROWS_AS(empirical_caoei(y, b1), invalid_parameter);
}

TEST_CASE("accumulator merge equals concatenated independent runs", "[aoei]") {
    AoeiAccumulator left, right, whole;
    const std::vector<std::pair<double, double>> a{{2, 1}, {1, 0}, {3, 2}}, b{{1, 0}, {4, 1}};
    for (auto [y, d] : a) left.add(y, d);
    for (auto [y, d] : b) right.add(y, d);
    left.merge(right);
    // The right-hand run starts from zero depth: Q = (Y + 0)^2/2 - B^2/2.
    double q = 0.0, prev = 0.0, sy = 0.0;
    for (auto [y, d] : a) {
        q += 0.5 * (y + prev) * (y + prev) - 0.5 * d * d;
        prev = d;
        sy += y;
    }
    prev = 0.0;
    for (auto [y, d] : b) {
        q += 0.5 * (y + prev) * (y + prev) - 0.5 * d * d;
        prev = d;
        sy += y;
    }
    CHECK_THAT(left.delta_e(), WithinAbs(q / sy, 1e-15));
    CHECK(left.count() == 5);
}

TEST_CASE("model-wide invariants", "[aoei][property]") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 0.999);
    std::uniform_int_distribution<int> kd(1, 12);
    for (int t = 0; t < 2000; ++t) {
        const IidErrorModel m{u(rng), u(rng), kd(rng)};
        for (auto mode : {AoeiMode::corrected, AoeiMode::protocol}) {
            const auto r = average_caoei(m, mode);
            CHECK(r.delta_e >= 0.5 - 1e-12);
            CHECK(r.e_b <= m.K - 1 + 1e-12);
            CHECK(r.delta_e == r.e_y2 / (2.0 * r.e_y) + r.e_b);
        }
        const auto lit = average_caoei(m, AoeiMode::paper_literal);
        CHECK(lit.delta_e == lit.e_y2 / (2.0 * lit.e_y) + lit.e_b);
    }
    for (int K : {1, 2, 4, 8}) {
        double prev = 0.0;
        for (double p = 0.0; p < 0.99; p += 0.05) {
            const double ey = expected_y({p, 0.3, K});
            CHECK(ey >= prev - 1e-12);
            prev = ey;
        }
    }
    for (double p : {0.1, 0.5, 0.9}) {
        double prev = 1e300;
        for (int K = 1; K <= 10; ++K) {
            const double ey = expected_y({p, 0.3, K});
            CHECK(ey <= prev * (1.0 + 1e-12));
            prev = ey;
        }
    }
}

TEST_CASE("reports serialize with their mode", "[aoei]") {
    const auto j = to_json(average_caoei({0.5, 0.2, 2}, AoeiMode::protocol));
    CHECK(j["mode"] == "protocol");
    CHECK(j.contains("delta_e"));
    CHECK(parse_mode("paper-literal") == AoeiMode::paper_literal);
    CHECK_FALSE(parse_mode("exact").has_value());
}
