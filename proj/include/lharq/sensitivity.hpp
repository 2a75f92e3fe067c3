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

// Relation between the selection weight omega_i, the decay factor beta and
// the error probability eps = (i - ln(omega_i)/beta) / S_z, with the C-AoEI
// sensitivities that follow from it. eps is identified with P^BT.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string_view>

#include "lharq/aoei.hpp"
#include "lharq/errors.hpp"
#include "lharq/numeric.hpp"

namespace lharq {

struct WeightContext {
    double omega = 1.0;  // omega_i
    double beta = 1.0;
    int i = 1;
    double s_z = 100.0;

    void validate() const {
        detail::require(omega > 0.0 && std::isfinite(omega), "omega_i must be finite and > 0");
        detail::require(beta > 0.0 && std::isfinite(beta), "beta must be finite and > 0");
        detail::require(i >= 1, "packet index i must be >= 1");
        detail::require(s_z > 0.0 && std::isfinite(s_z), "S_z must be finite and > 0");
    }

    double n_z() const { return i - std::log(omega) / beta; }
};

struct ModelValue {
    double value = 0.0;
    bool out_of_model = false;
};

inline ModelValue epsilon_from_weights(const WeightContext& ctx) {
    ctx.validate();
    const double eps = ctx.n_z() / ctx.s_z;
    return {eps, !(eps >= 0.0 && eps <= 1.0)};
}

// Partials of eps itself.
inline double d_eps_d_omega(const WeightContext& ctx) { return -1.0 / (ctx.s_z * ctx.beta * ctx.omega); }
inline double d_eps_d_beta(const WeightContext& ctx) {
    return std::log(ctx.omega) / (ctx.s_z * ctx.beta * ctx.beta);
}

struct CaoeiPartials {
    double d_omega = 0.0;            // chain rule through eps(omega)
    double d_beta = 0.0;
    double d_omega_published = 0.0;  // +1/(S beta omega) factor, opposite sign to the chain rule
};

inline CaoeiPartials caoei_partials(const WeightContext& ctx, double d_delta_d_eps) {
    ctx.validate();
    detail::require(std::isfinite(d_delta_d_eps), "dDelta/deps must be finite");
    CaoeiPartials p;
    p.d_omega = d_eps_d_omega(ctx) * d_delta_d_eps;
    p.d_beta = d_eps_d_beta(ctx) * d_delta_d_eps;
    p.d_omega_published = d_delta_d_eps / (ctx.s_z * ctx.beta * ctx.omega);
    return p;
}

struct Derivative {
    double value = 0.0;       // Richardson combination of the two steps
    double coarse = 0.0;      // step h
    double fine = 0.0;        // step h/2
    double step = 0.0;
    bool consistent = false;  // |coarse - fine| <= 1e-3 |fine|
};

namespace detail {

template <class F>
Derivative central_difference(F&& f, double x, double lo, double hi) {
    double h = std::max(1e-6, 1e-3 * std::fabs(x));
    h = std::min({h, x - lo, hi - x});
    if (!(h > 0.0)) throw invalid_parameter("finite difference point lies on the domain boundary");
    Derivative d;
    d.step = h;
    d.coarse = (f(x + h) - f(x - h)) / (2.0 * h);
    d.fine = (f(x + h / 2) - f(x - h / 2)) / h;
    d.value = (4.0 * d.fine - d.coarse) / 3.0;
    const double scale = std::max(std::fabs(d.fine), 1e-12);
    d.consistent = std::fabs(d.coarse - d.fine) <= 1e-3 * scale;
    return d;
}

}  // namespace detail

// dDelta/deps with eps in the role of P^BT, other model entries fixed.
inline Derivative d_caoei_d_eps(const IidErrorModel& base, double eps, AoeiMode mode = AoeiMode::corrected) {
    detail::require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1) for the derivative");
    auto f = [&](double e) {
        IidErrorModel m = base;
        m.p_bt = e;
        return average_caoei(m, mode).delta_e;
    };
    return detail::central_difference(f, eps, 0.0, 1.0);
}

// Closed form with the backtracking term q(1 - q^{N_z})/r and r = eps.
inline double explicit_caoei(double e_y, double e_y2, const WeightContext& ctx) {
    const double r = epsilon_from_weights(ctx).value;
    detail::require(r > 0.0 && r <= 1.0, "explicit C-AoEI needs eps in (0, 1]");
    const double q = 1.0 - r;
    return e_y2 / (2.0 * e_y) + q / r * (1.0 - std::pow(q, ctx.n_z()));
}

inline ModelValue optimal_beta(double omega, int i, double s_z, double eps_target) {
    detail::require(omega > 0.0, "omega_i must be > 0");
    detail::require(s_z > 0.0, "S_z must be > 0");
    detail::require(eps_target > 0.0 && eps_target < 1.0, "target eps must lie in (0, 1)");
    const double den = i - s_z * eps_target;
    if (std::fabs(den) < 1e-12) throw degenerate_target("i equals S_z * eps_target; beta* is undefined");
    const double b = std::log(omega) / den;
    return {b, !(b > 0.0)};
}

enum class Regime { freshness_priority, efficiency_priority, neutral };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::freshness_priority: return "freshness";
        case Regime::efficiency_priority: return "efficiency";
        case Regime::neutral: return "neutral";
    }
    return "unknown";
}

inline Regime regime_classify(double omega) {
    detail::require(omega > 0.0, "omega_i must be > 0");
    if (omega > 1.0) return Regime::freshness_priority;
    if (omega < 1.0) return Regime::efficiency_priority;
    return Regime::neutral;
}

struct SensitivityRow {
    double omega, beta, eps, d_omega, d_beta;
    Regime regime;
    bool out_of_model;
};

// Rows outside eps in (0, 1) carry NaN partials.
inline SensitivityRow sensitivity_row(const WeightContext& ctx, const IidErrorModel& base, AoeiMode mode) {
    const auto eps = epsilon_from_weights(ctx);
    SensitivityRow row{ctx.omega, ctx.beta, eps.value, std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN(), regime_classify(ctx.omega), eps.out_of_model};
    if (eps.value > 0.0 && eps.value < 1.0) {
        const auto p = caoei_partials(ctx, d_caoei_d_eps(base, eps.value, mode).value);
        row.d_omega = p.d_omega;
        row.d_beta = p.d_beta;
    }
    return row;
}

inline void write_sensitivity_header(std::ostream& os) { os << "omega,beta,eps,d_omega,d_beta,regime\n"; }

inline void write_sensitivity_row(std::ostream& os, const SensitivityRow& r) {
    write_csv_number(os, r.omega);
    os << ',';
    write_csv_number(os, r.beta);
    os << ',';
    write_csv_number(os, r.eps);
    os << ',';
    write_csv_number(os, r.d_omega);
    os << ',';
    write_csv_number(os, r.d_beta);
    os << ',' << to_string(r.regime) << '\n';
}

}  // namespace lharq
