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

// Shadowed-Rician land-mobile-satellite fading, link budget and
// interference-aware SINR.

#include <cmath>
#include <concepts>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lharq/errors.hpp"
#include "lharq/hypergeometric.hpp"
#include "lharq/random.hpp"

namespace lharq {

inline constexpr double speed_of_light = 299792458.0;

struct ShadowedRicianCoefficients {
    double alpha;  // density scale
    double beta;   // exponential decay
    double delta;  // hypergeometric argument slope
};

// |h|^2 with h = LoS + scatter. 2b is the average scatter power, m the
// Nakagami shadowing severity of the LoS amplitude, omega the average LoS power.
struct ShadowedRicianParams {
    double b = 0.126;
    double m = 10.1;
    double omega = 0.835;

    double mean_power() const noexcept { return 2.0 * b + omega; }

    ShadowedRicianCoefficients coefficients() const {
        detail::require(std::isfinite(b) && std::isfinite(m) && std::isfinite(omega),
                        "shadowed-Rician parameters must be finite");
        detail::require(m >= 0.0, "shadowed-Rician m must be >= 0");
        detail::require(omega >= 0.0, "shadowed-Rician omega must be >= 0");
        const double two_b = 2.0 * b;
        const double denom = two_b * m + omega;
        ShadowedRicianCoefficients c{};
        c.beta = 1.0 / two_b;
        if (m == 0.0 || omega == 0.0) {
            // No usable LoS: the hypergeometric factor is identically one.
            c.alpha = 1.0 / two_b;
            c.delta = 0.0;
        } else {
            c.alpha = std::pow(two_b * m / denom, m) / two_b;
            c.delta = omega / (two_b * denom);
        }
        if (!(std::isfinite(c.alpha) && std::isfinite(c.beta) && std::isfinite(c.delta)) || !(b > 0.0))
            throw invalid_parameter("shadowed-Rician coefficients are not finite (b must be > 0)");
        if (!(c.alpha > 0.0 && c.beta > 0.0 && c.delta >= 0.0 && c.delta < c.beta))
            throw invalid_parameter("shadowed-Rician coefficients violate alpha>0, beta>0, 0<=delta<beta");
        return c;
    }

    void validate() const { (void)coefficients(); }
};

// Library-chosen fading presets (heavy / average / light shadowing). These are
// common land-mobile-satellite fits shipped as defaults, not measured data.
struct FadingPreset {
    std::string_view name;
    ShadowedRicianParams params;
};

inline constexpr FadingPreset fading_presets[] = {
    {"heavy", {0.063, 0.739, 8.97e-4}},
    {"average", {0.126, 10.1, 0.835}},
    {"light", {0.158, 19.4, 1.29}},
};

inline std::optional<ShadowedRicianParams> find_fading_preset(std::string_view name) {
    for (const auto& p : fading_presets)
        if (p.name == name) return p.params;
    return std::nullopt;
}

inline double shadowed_rician_log_pdf(double x, const ShadowedRicianParams& p) {
    detail::require(x >= 0.0, "shadowed_rician_pdf needs x >= 0");
    const auto c = p.coefficients();
    double log_f = std::log(c.alpha) - c.beta * x;
    if (c.delta > 0.0) log_f += log_confluent_1f1(p.m, 1.0, c.delta * x);
    return log_f;
}

inline double shadowed_rician_pdf(double x, const ShadowedRicianParams& p) {
    return std::exp(shadowed_rician_log_pdf(x, p));
}

template <std::uniform_random_bit_generator G>
double sample_channel_gain(const ShadowedRicianParams& p, G& rng) {
    const double sigma = std::sqrt(p.b);
    std::normal_distribution<double> scatter(0.0, sigma);
    double los = 0.0;
    if (p.m > 0.0 && p.omega > 0.0) {
        std::gamma_distribution<double> los_power(p.m, p.omega / p.m);
        los = std::sqrt(los_power(rng));
    }
    // The scatter is circular, so the LoS phase can be fixed at zero.
    const double re = los + scatter(rng);
    const double im = scatter(rng);
    return re * re + im * im;
}

struct InterfererSpec {
    double distance_m = 2000.0;
    double power_w = 1e-3;
    double gain = 1.0;
    double pathloss_exponent = 3.0;
    double reference_distance_m = 1.0;

    double attenuation() const {
        return std::pow(distance_m / reference_distance_m, -pathloss_exponent);
    }

    void validate() const {
        detail::require(distance_m > 0.0 && reference_distance_m > 0.0, "interferer distances must be > 0");
        detail::require(power_w >= 0.0, "interferer power must be >= 0");
        detail::require(gain > 0.0, "interferer gain must be > 0");
        detail::require(pathloss_exponent >= 2.0 && pathloss_exponent <= 6.0,
                        "path-loss exponent must lie in [2, 6]");
    }
};

// Powers and noise in watts, gains linear. The noise term enters the SINR
// denominator as sigma2 (not normalised to one).
struct LinkBudget {
    double distance_m = 500e3;
    double carrier_hz = 2e9;
    double sat_gain = 100.0;
    double dest_gain = 1.0;
    double sat_power_w = 1.0;
    double noise_w = 3.98e-15;
    std::vector<InterfererSpec> interferers;

    // Free-space satellite gain factor (c / 4 pi f d)^2 G_s G_d.
    double satellite_path_gain() const {
        const double fspl = speed_of_light / (4.0 * std::numbers::pi * carrier_hz * distance_m);
        return fspl * fspl * sat_gain * dest_gain;
    }

    // Free-space factor of interferer j under the single-link form,
    // (c / 4 pi f d_j)^2 G_j G_d. Not used by sinr(); kept for link-budget reports.
    double interferer_path_gain(const InterfererSpec& j) const {
        const double fspl = speed_of_light / (4.0 * std::numbers::pi * carrier_hz * j.distance_m);
        return fspl * fspl * j.gain * dest_gain;
    }

    double mean_snr(const ShadowedRicianParams& fading) const {
        return satellite_path_gain() * sat_power_w * fading.mean_power() / noise_w;
    }

    void validate() const {
        detail::require(distance_m > 0.0 && carrier_hz > 0.0, "link distance and frequency must be > 0");
        detail::require(sat_gain > 0.0 && dest_gain > 0.0, "antenna gains must be > 0");
        detail::require(sat_power_w > 0.0 && noise_w > 0.0, "satellite power and noise must be > 0");
        for (const auto& j : interferers) j.validate();
    }
};

inline double sinr(const LinkBudget& link, double h2, std::span<const double> g2) {
    detail::require(h2 >= 0.0, "channel gain must be >= 0");
    if (g2.size() != link.interferers.size())
        throw invalid_parameter("interferer gain count does not match the interferer set");
    double interference = 0.0;
    for (std::size_t j = 0; j < g2.size(); ++j) {
        detail::require(g2[j] >= 0.0, "interferer gain must be >= 0");
        const auto& spec = link.interferers[j];
        interference += spec.attenuation() * spec.power_w * g2[j];
    }
    return link.satellite_path_gain() * link.sat_power_w * h2 / (interference + link.noise_w);
}

// Per-slot SINR draws. The satellite fading of slot z comes from its own
// counter stream; interferer j uses a Rayleigh (unit-mean exponential power)
// draw on lane j, so adding interferers never perturbs the other draws.
class ChannelSampler {
public:
    ChannelSampler(ShadowedRicianParams fading, LinkBudget link)
        : fading_(fading), link_(std::move(link)) {
        fading_.validate();
        link_.validate();
        signal_scale_ = link_.satellite_path_gain() * link_.sat_power_w;
        weights_.reserve(link_.interferers.size());
        for (const auto& j : link_.interferers) weights_.push_back(j.attenuation() * j.power_w);
    }

    const ShadowedRicianParams& fading() const noexcept { return fading_; }
    const LinkBudget& link() const noexcept { return link_; }

    double draw_sinr(const SlotStreams& streams, std::int64_t slot) const {
        auto rng = streams.stream(slot, Purpose::satellite_fading);
        const double h2 = sample_channel_gain(fading_, rng);
        double interference = 0.0;
        for (std::size_t j = 0; j < weights_.size(); ++j) {
            const double u = streams.uniform(slot, Purpose::interferer_fading, j);
            interference += weights_[j] * -std::log1p(-u);
        }
        return signal_scale_ * h2 / (interference + link_.noise_w);
    }

private:
    ShadowedRicianParams fading_;
    LinkBudget link_;
    double signal_scale_ = 0.0;
    std::vector<double> weights_;
};

// Immutable bank of SINR draws shared by the analytic error-probability
// estimates, so ratios and argmax searches see one consistent sample set.
class SnrBank {
public:
    SnrBank() = default;
    explicit SnrBank(std::vector<double> samples) : samples_(std::move(samples)) {}

    SnrBank(const ChannelSampler& sampler, std::size_t size, std::uint64_t seed) {
        const SlotStreams streams(derive_seed(seed, static_cast<std::uint64_t>(Purpose::bank)));
        samples_.reserve(size);
        for (std::size_t i = 0; i < size; ++i)
            samples_.push_back(sampler.draw_sinr(streams, static_cast<std::int64_t>(i)));
    }

    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    std::vector<double> samples_;
};

}  // namespace lharq
