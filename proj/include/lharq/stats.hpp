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

#pragma once

// Goodness-of-fit helpers used by the checks and the CLI.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lharq/channel.hpp"
#include "lharq/errors.hpp"

namespace lharq::stats {

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
};

// Pearson test against expected counts. Adjacent cells are pooled from the
// right until each pooled expectation reaches `min_expected`.
inline ChiSquare chi_square_gof(std::span<const double> observed, std::span<const double> expected,
                                double min_expected = 5.0, int fitted_params = 0) {
    detail::require(observed.size() == expected.size() && !observed.empty(), "chi-square needs matching cell counts");
    std::vector<double> o, e;
    double ao = 0.0, ae = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ao += observed[i];
        ae += expected[i];
        if (ae >= min_expected) {
            o.push_back(ao);
            e.push_back(ae);
            ao = ae = 0.0;
        }
    }
    if (ae > 0.0 || ao > 0.0) {
        if (e.empty()) {
            o.push_back(ao);
            e.push_back(ae);
        } else {
            o.back() += ao;
            e.back() += ae;
        }
    }
    ChiSquare r;
    for (std::size_t i = 0; i < o.size(); ++i) r.statistic += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
    r.dof = static_cast<int>(o.size()) - 1 - fitted_params;
    if (r.dof < 1) throw insufficient_data("chi-square test has no degrees of freedom left");
    r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
    return r;
}

// Asymptotic Kolmogorov distribution tail Pr{K > x}.
inline double kolmogorov_tail(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 0.27) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double t = 2.0 * std::exp(-2.0 * k * k * x * x) * (k % 2 ? 1.0 : -1.0);
        s += t;
        if (std::fabs(t) < 1e-16) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

struct KolmogorovSmirnov {
    double statistic = 0.0;
    double p_value = 0.0;
};

// One-sample KS test; `samples` is sorted in place.
inline KolmogorovSmirnov ks_test(std::vector<double>& samples, const std::function<double(double)>& cdf) {
    detail::require(!samples.empty(), "KS test needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    const double sn = std::sqrt(n);
    return {d, kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d)};
}

// Integrals of the shadowed-Rician density.
inline double pdf_integral(const ShadowedRicianParams& p, double a, double b) {
    auto f = [&](double x) { return shadowed_rician_pdf(x, p); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-11);
}

inline double pdf_moment(const ShadowedRicianParams& p, int order) {
    auto f = [&](double x) { return std::pow(x, order) * shadowed_rician_pdf(x, p); };
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

inline double pdf_cdf(const ShadowedRicianParams& p, double x) { return x <= 0.0 ? 0.0 : pdf_integral(p, 0.0, x); }

// Edges x_1 < ... < x_{k-1} splitting the density into k equiprobable cells.
// The CDF is tabulated on fixed segments and inverted by bisection inside the
// bracketing segment with a fixed-order rule.
inline std::vector<double> equiprobable_edges(const ShadowedRicianParams& p, int cells) {
    detail::require(cells >= 2, "need at least two cells");
    double hi = std::max(1.0, 4.0 * p.mean_power());
    while (pdf_cdf(p, hi) < 1.0 - 1e-3 / cells) hi *= 2.0;
    constexpr int segments = 4000;
    const double w = hi / segments;
    auto f = [&](double x) { return shadowed_rician_pdf(x, p); };
    auto piece = [&](double a, double b) {
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0);
    };
    std::vector<double> cum(segments + 1, 0.0);
    for (int k = 0; k < segments; ++k) cum[k + 1] = cum[k] + piece(k * w, (k + 1) * w);
    std::vector<double> edges;
    for (int c = 1; c < cells; ++c) {
        const double target = static_cast<double>(c) / cells;
        const auto it = std::lower_bound(cum.begin(), cum.end(), target);
        detail::require(it != cum.end() && it != cum.begin(), "CDF table does not bracket the quantile");
        const auto k = static_cast<int>(it - cum.begin()) - 1;
        double lo = k * w, up = (k + 1) * w;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + up);
            (cum[k] + piece(k * w, mid) < target ? lo : up) = mid;
        }
        edges.push_back(0.5 * (lo + up));
    }
    return edges;
}

// Chi-square of sampler output against the density over equiprobable cells.
template <class Rng>
ChiSquare sampler_gof(const ShadowedRicianParams& p, std::size_t draws, int cells, Rng& rng) {
    const auto edges = equiprobable_edges(p, cells);
    std::vector<double> obs(static_cast<std::size_t>(cells), 0.0);
    for (std::size_t i = 0; i < draws; ++i) {
        const double x = sample_channel_gain(p, rng);
        obs[static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin())] += 1.0;
    }
    std::vector<double> exp(static_cast<std::size_t>(cells), static_cast<double>(draws) / cells);
    return chi_square_gof(obs, exp);
}

}  // namespace lharq::stats
