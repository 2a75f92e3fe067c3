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
#include <numbers>
#include <sstream>
#include <vector>

#include "lharq/sensitivity.hpp"

using namespace lharq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// d/dr of the corrected E{B}: sum_n p^{n-1}(1-p) sum_b b d/dr[(1-r)^b r].
double corrected_db_dr(double p, double r, int K) {
    double s = 0.0;
    for (int n = 1; n <= K; ++n) {
        double inner = 0.0;
        for (int b = 1; b <= n - 1; ++b) inner += b * (std::pow(1 - r, b) - b * r * std::pow(1 - r, b - 1));
        s += std::pow(p, n - 1) * (1 - p) * inner;
    }
    return s;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(std::fabs(y[i]));
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(std::fabs(y[i])) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

}  // namespace

TEST_CASE("epsilon from weights", "[sensitivity]") {
    CHECK_THAT(epsilon_from_weights({1.0, 0.7, 12, 200}).value, WithinRel(12.0 / 200.0, 1e-15));
    CHECK_THAT(epsilon_from_weights({std::numbers::e, 1.0, 5, 100}).value, WithinAbs(0.04, 1e-15));
    double prev = 2.0;
    for (double w = 0.01; w < 1000; w *= 1.7) {
        const double e = epsilon_from_weights({w, 0.5, 20, 100}).value;
        CHECK(e < prev);
        prev = e;
    }
    CHECK(epsilon_from_weights({1e-30, 0.01, 5, 100}).out_of_model);
    CHECK_THROWS_AS(epsilon_from_weights({1.0, 0.0, 5, 100}), invalid_parameter);
}

TEST_CASE("partials of eps", "[sensitivity][property]") {
    for (double w : {0.1, 0.5, 1.0, 2.0, 9.0})
        for (double b : {0.05, 0.5, 3.0}) {
            const WeightContext c{w, b, 7, 150};
            CHECK(d_eps_d_omega(c) < 0.0);
            const double db = d_eps_d_beta(c);
            if (w > 1.0) CHECK(db > 0.0);
            if (w < 1.0) CHECK(db < 0.0);
            if (w == 1.0) CHECK(db == 0.0);
            // Against central differences of eps itself.
            const double h = 1e-6;
            auto eps = [&](double ww, double bb) { return epsilon_from_weights({ww, bb, 7, 150}).value; };
            CHECK_THAT(d_eps_d_omega(c), WithinRel((eps(w + h * w, b) - eps(w - h * w, b)) / (2 * h * w), 1e-6));
            if (w != 1.0)
                CHECK_THAT(db, WithinRel((eps(w, b + h * b) - eps(w, b - h * b)) / (2 * h * b), 1e-6));
        }
}

TEST_CASE("eps asymptotics in beta", "[sensitivity][property]") {
    CHECK_THAT(epsilon_from_weights({3.0, 1e9, 10, 100}).value, WithinAbs(0.1, 1e-9));
    CHECK(std::fabs(epsilon_from_weights({3.0, 1e-9, 10, 100}).value) > 1e6);
    CHECK(std::fabs(epsilon_from_weights({0.3, 1e-9, 10, 100}).value) > 1e6);
}

TEST_CASE("C-AoEI partials", "[sensitivity]") {
    const auto at_one = caoei_partials({1.0, 0.8, 10, 100}, 2.5);
    CHECK(at_one.d_beta == 0.0);
    CHECK_THAT(at_one.d_omega, WithinRel(-2.5 / (100 * 0.8), 1e-15));
    CHECK(at_one.d_omega_published == -at_one.d_omega);
    const WeightContext c{2.0, 0.4, 10, 100};
    const auto p = caoei_partials(c, 1.7);
    CHECK_THAT(p.d_omega, WithinRel(d_eps_d_omega(c) * 1.7, 1e-15));
    CHECK_THAT(p.d_beta, WithinRel(d_eps_d_beta(c) * 1.7, 1e-15));
}

TEST_CASE("numerical dDelta/deps matches the analytic corrected derivative", "[sensitivity]") {
    for (double p : {0.2, 0.5, 0.8})
        for (double r : {0.05, 0.3, 0.7})
            for (int K : {2, 4}) {
                const auto d = d_caoei_d_eps({p, 0.5, K}, r, AoeiMode::corrected);
                INFO("p=" << p << " r=" << r << " K=" << K);
                CHECK(d.consistent);
                CHECK_THAT(d.value, WithinAbs(corrected_db_dr(p, r, K), 1e-8));
            }
    CHECK_THROWS_AS(d_caoei_d_eps({0.5, 0.5, 2}, 1.0), invalid_parameter);
}

TEST_CASE("optimal beta", "[sensitivity]") {
    const auto one = optimal_beta(1.0, 5, 100, 0.2);
    CHECK(one.value == 0.0);
    CHECK(one.out_of_model);
    const auto e = optimal_beta(std::numbers::e, 5, 100, 0.04);
    CHECK_THAT(e.value, WithinRel(1.0, 1e-14));
    CHECK_FALSE(e.out_of_model);
    CHECK_THROWS_AS(optimal_beta(2.0, 5, 100, 0.05), degenerate_target);
}

TEST_CASE("optimal beta inverts eps on its valid domain", "[sensitivity][property]") {
    for (double w : {0.05, 0.3, 0.9, 1.5, 4.0, 20.0})
        for (double b : {0.01, 0.1, 1.0, 10.0}) {
            const WeightContext c{w, b, 30, 200};
            const auto eps = epsilon_from_weights(c);
            if (eps.out_of_model || eps.value <= 0.0 || eps.value >= 1.0) continue;
            CHECK_THAT(optimal_beta(w, 30, 200, eps.value).value, WithinRel(b, 1e-9));
        }
}

TEST_CASE("regimes", "[sensitivity]") {
    CHECK(regime_classify(2.0) == Regime::freshness_priority);
    CHECK(regime_classify(0.5) == Regime::efficiency_priority);
    CHECK(regime_classify(1.0) == Regime::neutral);
    CHECK_THROWS_AS(regime_classify(0.0), invalid_parameter);
}

TEST_CASE("sensitivity magnitudes scale as 1/omega and 1/beta^2", "[sensitivity][property]") {
    std::vector<double> ws, dw, bs, dbs;
    for (double w = 1.5; w <= 150.0; w *= 1.2) {
        ws.push_back(w);
        dw.push_back(d_eps_d_omega({w, 0.5, 10, 100}));
    }
    for (double b = 0.1; b <= 10.0; b *= 1.2) {
        bs.push_back(b);
        dbs.push_back(d_eps_d_beta({3.0, b, 10, 100}));
    }
    CHECK_THAT(slope(ws, dw), WithinAbs(-1.0, 0.05));
    CHECK_THAT(slope(bs, dbs), WithinAbs(-2.0, 0.05));
}

TEST_CASE("explicit form reduces to the walk-back depth", "[sensitivity]") {
    // omega = 1 makes N_z = i an integer, so q(1 - q^{N_z})/r is the protocol depth at n = i + 1.
    const WeightContext c{1.0, 1.0, 4, 20};
    const double r = 0.2;
    const double expect = 1.5 + cond_expected_b(r, 5, AoeiMode::protocol);
    CHECK_THAT(explicit_caoei(2.0, 6.0, c), WithinRel(expect, 1e-14));
}

TEST_CASE("sensitivity rows and CSV", "[sensitivity]") {
    const IidErrorModel base{0.5, 0.2, 3};
    const auto row = sensitivity_row({2.0, 0.5, 40, 200}, base, AoeiMode::corrected);
    CHECK_FALSE(row.out_of_model);
    CHECK(row.regime == Regime::freshness_priority);
    // sign(dDelta/dbeta) = sign(ln omega) sign(dDelta/deps)
    const double dd = d_caoei_d_eps(base, row.eps).value;
    CHECK((row.d_beta > 0) == (dd > 0));
    const auto outside = sensitivity_row({1e-40, 0.01, 1, 200}, base, AoeiMode::corrected);
    CHECK(outside.out_of_model);
    CHECK(std::isnan(outside.d_omega));
    std::ostringstream os;
    write_sensitivity_header(os);
    write_sensitivity_row(os, row);
    write_sensitivity_row(os, outside);
    const std::string s = os.str();
    CHECK(s.rfind("omega,beta,eps,d_omega,d_beta,regime\n2,0.5,", 0) == 0);
    CHECK(s.find(",nan,nan,efficiency\n") != std::string::npos);
}
