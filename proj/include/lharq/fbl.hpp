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

// Finite-blocklength decoding-error probabilities.
//
// Normal approximation with the AWGN capacity and dispersion
//     C(g) = log2(1 + g)                       [bits / channel use]
//     V(g) = (1 - (1 + g)^-2) (log2 e)^2       [bits^2 / channel use]
//     eps(g) = Q((C(g) - R) / sqrt(V(g) / n)).
// Expectations over the SINR are Monte Carlo averages over an SnrBank.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "lharq/channel.hpp"
#include "lharq/errors.hpp"
#include "lharq/numeric.hpp"

namespace lharq {

struct FbcParams {
    int blocklength = 200;     // n, channel uses
    double rate = 0.5;         // R, bits per channel use
    int packet_bits = 100;     // N_s

    void validate() const {
        detail::require(blocklength >= 1, "blocklength must be >= 1");
        detail::require(rate > 0.0 && std::isfinite(rate), "coding rate must be > 0");
        detail::require(packet_bits >= 1, "packet size must be >= 1 bit");
    }
};

inline double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

inline double awgn_capacity(double snr) noexcept { return std::log2(1.0 + snr); }

inline double awgn_dispersion(double snr) noexcept {
    const double inv = 1.0 / (1.0 + snr);
    return (1.0 - inv * inv) * std::numbers::log2e * std::numbers::log2e;
}

// Error probability at a fixed SINR with an arbitrary (possibly fractional)
// effective blocklength.
inline double fbl_error_at(double snr, double rate, double blocklength) noexcept {
    const double c = awgn_capacity(snr);
    const double v = awgn_dispersion(snr);
    if (!(v > 0.0)) return c > rate ? 0.0 : (c < rate ? 1.0 : 0.5);
    return std::clamp(q_function((c - rate) / std::sqrt(v / blocklength)), 0.0, 1.0);
}

inline double ff_error_prob(double snr, const FbcParams& fbc) {
    fbc.validate();
    detail::require(snr >= 0.0, "SINR must be >= 0");
    return fbl_error_at(snr, fbc.rate, fbc.blocklength);
}

inline double ff_error_prob(std::span<const double> bank, const FbcParams& fbc) {
    fbc.validate();
    if (bank.empty()) throw invalid_parameter("ff_error_prob needs at least one Monte Carlo draw");
    CompensatedSum acc;
    for (double g : bank) acc += fbl_error_at(g, fbc.rate, fbc.blocklength);
    return std::clamp(static_cast<double>(acc.value() / bank.size()), 0.0, 1.0);
}

inline double threshold_error_prob(std::span<const double> bank, double gamma_th) {
    if (bank.empty()) throw invalid_parameter("threshold_error_prob needs at least one Monte Carlo draw");
    detail::require(gamma_th >= 0.0, "SINR threshold must be >= 0");
    const auto below = std::count_if(bank.begin(), bank.end(), [gamma_th](double g) { return g < gamma_th; });
    return static_cast<double>(below) / static_cast<double>(bank.size());
}

namespace detail {
inline constexpr double conditional_floor = 1e-12;

inline void check_mixing(double rho) {
    require(rho > 0.0 && rho <= 1.0, "mixing rate rho must lie in (0, 1]");
}
}  // namespace detail

// Backtracking error ratio at a fixed SINR before clamping: the numerator uses
// the prior-information blocklength rho*n, the denominator the feedforward
// blocklength n.
inline double bt_error_ratio(double snr, const FbcParams& fbc, double rho) {
    fbc.validate();
    detail::check_mixing(rho);
    const double den = fbl_error_at(snr, fbc.rate, fbc.blocklength);
    if (den < detail::conditional_floor)
        throw conditional_undefined("backtracking error undefined: feedforward decoding never fails");
    return fbl_error_at(snr, fbc.rate, rho * fbc.blocklength) / den;
}

inline double bt_error_prob(double snr, const FbcParams& fbc, double rho) {
    return std::clamp(bt_error_ratio(snr, fbc, rho), 0.0, 1.0);
}

inline double bt_error_prob(std::span<const double> bank, const FbcParams& fbc, double rho) {
    fbc.validate();
    detail::check_mixing(rho);
    if (bank.empty()) throw invalid_parameter("bt_error_prob needs at least one Monte Carlo draw");
    CompensatedSum num;
    CompensatedSum den;
    for (double g : bank) {
        num += fbl_error_at(g, fbc.rate, rho * fbc.blocklength);
        den += fbl_error_at(g, fbc.rate, fbc.blocklength);
    }
    const long double d = den.value() / bank.size();
    if (d < detail::conditional_floor)
        throw conditional_undefined("backtracking error undefined: feedforward decoding never fails");
    return std::clamp(static_cast<double>((num.value() / bank.size()) / d), 0.0, 1.0);
}

// Throughput-maximising rate over a finite set; ties go to the smaller rate.
inline double rate_adapt(std::span<const double> bank, std::span<const double> rates, FbcParams fbc) {
    if (rates.empty()) throw invalid_parameter("rate_adapt needs a nonempty rate set");
    std::vector<double> sorted(rates.begin(), rates.end());
    std::sort(sorted.begin(), sorted.end());
    double best_rate = sorted.front();
    double best = -1.0;
    for (double r : sorted) {
        fbc.rate = r;
        const double throughput = r * (1.0 - ff_error_prob(bank, fbc));
        if (throughput > best) {
            best = throughput;
            best_rate = r;
        }
    }
    return best_rate;
}

}  // namespace lharq
