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

// Kummer's confluent hypergeometric function 1F1(a; b; x).

#include <cmath>
#include <string>

#include "lharq/errors.hpp"

namespace lharq {

inline constexpr double kummer_rel_tol = 1e-12;
inline constexpr int kummer_max_terms = 10000;

namespace detail {

inline bool is_nonpositive_integer(double v) {
    return v <= 0.0 && std::floor(v) == v;
}

// Power series sum_k (a)_k/(b)_k x^k/k!, returned as mantissa * exp(log_scale)
// so that large arguments do not overflow before the caller applies its own
// exponential prefactor.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    double value() const { return mantissa * std::exp(log_scale); }
    double log_abs() const { return std::log(std::fabs(mantissa)) + log_scale; }
};

inline ScaledValue kummer_series(double a, double b, double x) {
    constexpr double rescale_at = 1e280;
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    for (int k = 0; k < kummer_max_terms; ++k) {
        if (detail::is_nonpositive_integer(a) && static_cast<double>(k) >= -a)
            return {sum, log_scale};
        const double ratio = (a + k) * x / ((b + k) * (k + 1.0));
        term *= ratio;
        sum += term;
        if (std::fabs(sum) > rescale_at) {
            sum /= rescale_at;
            term /= rescale_at;
            log_scale += std::log(rescale_at);
        }
        if (std::fabs(term) <= kummer_rel_tol * std::fabs(sum) && std::fabs(ratio) < 1.0)
            return {sum, log_scale};
    }
    throw numerical_failure("1F1 series did not converge within " + std::to_string(kummer_max_terms) +
                            " terms (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                            ", x=" + std::to_string(x) + ")");
}

inline void check_kummer_args(double a, double b, double x) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x))
        throw invalid_parameter("1F1 arguments must be finite");
    if (is_nonpositive_integer(b)) throw invalid_parameter("1F1 undefined for nonpositive integer b");
}

// Large positive x: 1F1 ~ Gamma(b)/Gamma(a) e^x x^(a-b) sum_k (b-a)_k (1-a)_k / (k! x^k).
// The power series would need about x terms there.
inline constexpr double kummer_asymptotic_from = 500.0;

inline bool use_asymptotic(double a, double b, double x) {
    return x > kummer_asymptotic_from && x > 50.0 * (std::fabs(a) + std::fabs(b)) && a > 0.0 && b > 0.0;
}

inline ScaledValue kummer_asymptotic(double a, double b, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double next = term * (b - a + k) * (1.0 - a + k) / ((k + 1.0) * x);
        if (std::fabs(next) >= std::fabs(term)) break;
        term = next;
        sum += term;
        if (std::fabs(term) <= kummer_rel_tol * std::fabs(sum)) break;
    }
    return {sum, std::lgamma(b) - std::lgamma(a) + x + (a - b) * std::log(x)};
}

// Negative arguments go through Kummer's transformation
// 1F1(a;b;x) = e^x 1F1(b-a;b;-x), which keeps the series positive when b > a.
inline ScaledValue kummer_scaled(double a, double b, double x) {
    if (x < 0.0 && !is_nonpositive_integer(a)) {
        ScaledValue s = kummer_series(b - a, b, -x);
        s.log_scale += x;
        return s;
    }
    if (use_asymptotic(a, b, x)) return kummer_asymptotic(a, b, x);
    return kummer_series(a, b, x);
}

}  // namespace detail

inline double confluent_1f1(double a, double b, double x) {
    detail::check_kummer_args(a, b, x);
    if (x == 0.0) return 1.0;
    return detail::kummer_scaled(a, b, x).value();
}

// log(1F1(a;b;x)) for x >= 0 and a >= 0, where the function is positive.
inline double log_confluent_1f1(double a, double b, double x) {
    detail::check_kummer_args(a, b, x);
    detail::require(x >= 0.0 && a >= 0.0 && b > 0.0, "log_confluent_1f1 needs a >= 0, b > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return detail::kummer_scaled(a, b, x).log_abs();
}

// Finite form for positive integer a and b = 1:
// 1F1(m; 1; x) = e^x L_{m-1}(-x), with the Laguerre polynomial by recurrence.
inline double confluent_1f1_laguerre(int m, double x) {
    detail::require(m >= 1, "confluent_1f1_laguerre needs m >= 1");
    const double t = -x;
    double prev = 1.0;     // L_0
    double cur = 1.0 - t;  // L_1
    if (m == 1) return std::exp(x);
    for (int k = 1; k < m - 1; ++k) {
        const double next = ((2.0 * k + 1.0 - t) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return std::exp(x) * cur;
}

}  // namespace lharq
