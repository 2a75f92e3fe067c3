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

// Renewal analysis of the average C-AoEI under i.i.d. errors.
//
// Age drops at each feedforward departure to B, the freshness gained from
// backtracking; Y is the interdeparture time. The per-departure area is
//   Q_m = (Y_m + B_{m-1})^2 / 2 - B_m^2 / 2
// and the time average is E{Y^2}/(2E{Y}) + E{B}.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lharq/errors.hpp"
#include "lharq/numeric.hpp"

namespace lharq {

struct IidErrorModel {
    double p_ff = 0.5;  // per-round feedforward error
    double p_bt = 0.2;  // per-step backtracking failure
    int K = 2;

    void validate() const {
        detail::require(std::isfinite(p_ff) && p_ff >= 0.0, "p_ff must be finite and >= 0");
        if (p_ff >= 1.0) throw divergent_model("p_ff >= 1: no feedforward decoding ever succeeds");
        detail::require(std::isfinite(p_bt) && p_bt >= 0.0 && p_bt <= 1.0, "p_bt must lie in [0, 1]");
        detail::require(K >= 1, "K must be >= 1");
    }
};

// Backtracking-depth evaluation.
//   paper_literal  (n-1) q^n + (q - q^n)/r with round weight p^n (1-p), TB terms as printed
//   corrected      sum_{b=1}^{n-1} b q^b r with round weight p^{n-1} (1-p)
//   protocol       E[min(Geom, n-1)] = q (1 - q^{n-1}) / r with weight p^{n-1}(1-p)/(1-p^K)
// where q = 1 - r and r = P^BT. `protocol` is what the walk-back engine realises.
enum class AoeiMode { paper_literal, corrected, protocol, empirical };

inline std::string_view to_string(AoeiMode m) {
    switch (m) {
        case AoeiMode::paper_literal: return "paper-literal";
        case AoeiMode::corrected: return "corrected";
        case AoeiMode::protocol: return "protocol";
        case AoeiMode::empirical: return "empirical";
    }
    return "unknown";
}

inline std::optional<AoeiMode> parse_mode(std::string_view s) {
    if (s == "paper-literal" || s == "paper_literal" || s == "paper") return AoeiMode::paper_literal;
    if (s == "corrected") return AoeiMode::corrected;
    if (s == "protocol") return AoeiMode::protocol;
    if (s == "empirical") return AoeiMode::empirical;
    return std::nullopt;
}

// E{Y}: rounds of the departing circle plus K slots per truncated restart.
inline double expected_y(const IidErrorModel& m) {
    m.validate();
    const long double p = m.p_ff;
    CompensatedSum s;
    for (int k = 1; k <= m.K; ++k) s += k * ipow(p, k - 1) * (1.0L - p);
    const long double pk = ipow(p, m.K);
    s += m.K * pk;
    return static_cast<double>(s.value() / (1.0L - pk));
}

inline double expected_y2(const IidErrorModel& m) {
    m.validate();
    const long double p = m.p_ff;
    const long double ey = expected_y(m);
    CompensatedSum s;
    for (int k = 1; k <= m.K; ++k) s += static_cast<long double>(k) * k * ipow(p, k - 1) * (1.0L - p);
    const long double pk = ipow(p, m.K);
    s += pk * (static_cast<long double>(m.K) * m.K + 2.0L * m.K * ey);
    return static_cast<double>(s.value() / (1.0L - pk));
}

// Closed form of sum_{k=0}^{n-1} (a + k r) q^k.
inline double arith_geom_sum_closed(double a, double r, double q, int n) {
    const long double qn = ipow(q, n);
    const long double one_q = 1.0L - q;
    return static_cast<double>((a - (a + (n - 1.0L) * r) * qn) / one_q +
                               r * q * (1.0L - ipow(q, n - 1)) / (one_q * one_q));
}

inline double arith_geom_sum_direct(double a, double r, double q, int n) {
    CompensatedSum s;
    for (int k = 0; k < n; ++k) s += (static_cast<long double>(a) + k * static_cast<long double>(r)) * ipow(q, k);
    return static_cast<double>(s.value());
}

inline double cond_expected_b(double p_bt, int n, AoeiMode mode) {
    detail::require(n >= 1, "round count n must be >= 1");
    detail::require(p_bt >= 0.0 && p_bt <= 1.0, "p_bt must lie in [0, 1]");
    const long double r = p_bt;
    const long double q = 1.0L - r;
    switch (mode) {
        case AoeiMode::paper_literal:
            if (r == 0.0L) break;
            return static_cast<double>((n - 1) * ipow(q, n) + (q - ipow(q, n)) / r);
        case AoeiMode::protocol:
            if (r == 0.0L) return n - 1.0;
            return static_cast<double>(q * (1.0L - ipow(q, n - 1)) / r);
        case AoeiMode::corrected:
        case AoeiMode::empirical:
            break;
    }
    CompensatedSum s;
    for (int b = 1; b <= n - 1; ++b) s += b * ipow(q, b) * r;
    return static_cast<double>(s.value());
}

namespace detail {

// TB terms with x = (1 - P^BT) P^FF, in the form they are printed.
struct TbTerms {
    long double tb1, tb2, tb3, tb4;
};

inline TbTerms tb_terms_printed(const IidErrorModel& m) {
    const long double p = m.p_ff;
    const long double x = (1.0L - m.p_bt) * p;
    const int K = m.K;
    TbTerms t{};
    t.tb1 = K * ipow(x, K + 1) / (1.0L - x) + x * (1.0L - ipow(x, K)) / ((1.0L - x) * (1.0L - x));
    t.tb2 = x * (ipow(x, K) - 1.0L) / (x - 1.0L);
    t.tb3 = p == 0.0L ? 0.0L : p * (ipow(p, K) - 1.0L) / (p - 1.0L);
    t.tb4 = t.tb2;
    return t;
}

}  // namespace detail

inline double expected_b(const IidErrorModel& m, AoeiMode mode) {
    m.validate();
    const long double p = m.p_ff;
    if (mode == AoeiMode::paper_literal && m.p_bt > 0.0) {
        const auto t = detail::tb_terms_printed(m);
        const long double r = m.p_bt;
        return static_cast<double>((1.0L - p) * (t.tb1 - t.tb2 + (1.0L - r) / r * t.tb3 - t.tb4 / r));
    }
    const AoeiMode cond_mode = mode == AoeiMode::protocol ? AoeiMode::protocol : AoeiMode::corrected;
    CompensatedSum s;
    for (int n = 1; n <= m.K; ++n)
        s += static_cast<long double>(cond_expected_b(m.p_bt, n, cond_mode)) * ipow(p, n - 1) * (1.0L - p);
    long double e = s.value();
    if (mode == AoeiMode::protocol) e /= (1.0L - ipow(p, m.K));
    return static_cast<double>(e);
}

// Paper-literal E{B} assembled from the unsimplified sums (no TB closed forms).
inline double expected_b_paper_direct(const IidErrorModel& m) {
    m.validate();
    const long double p = m.p_ff;
    CompensatedSum s;
    for (int n = 1; n <= m.K; ++n)
        s += static_cast<long double>(cond_expected_b(m.p_bt, n, AoeiMode::paper_literal)) * ipow(p, n) * (1.0L - p);
    return static_cast<double>(s.value());
}

struct AoeiReport {
    double e_y = 0.0;
    double e_y2 = 0.0;
    double e_b = 0.0;
    double delta_e = 0.0;
    AoeiMode mode = AoeiMode::corrected;
    std::uint64_t departures = 0;  // empirical only
};

inline AoeiReport make_report(double e_y, double e_y2, double e_b, AoeiMode mode) {
    AoeiReport r;
    r.e_y = e_y;
    r.e_y2 = e_y2;
    r.e_b = e_b;
    r.delta_e = e_y2 / (2.0 * e_y) + e_b;
    r.mode = mode;
    return r;
}

inline AoeiReport average_caoei(const IidErrorModel& m, AoeiMode mode) {
    if (mode == AoeiMode::empirical) throw invalid_parameter("empirical mode needs a trace; use empirical_caoei");
    return make_report(expected_y(m), expected_y2(m), expected_b(m, mode), mode);
}

inline nlohmann::ordered_json to_json(const AoeiReport& r) {
    nlohmann::ordered_json j;
    j["mode"] = std::string(to_string(r.mode));
    j["e_y"] = r.e_y;
    j["e_y2"] = r.e_y2;
    j["e_b"] = r.e_b;
    j["delta_e"] = r.delta_e;
    if (r.mode == AoeiMode::empirical) j["departures"] = r.departures;
    return j;
}

// Streaming reducer over (Y_m, B_m). Merge concatenates traces: the first
// departure of the right-hand side sees B_{m-1} = 0, as for an independent run.
class AoeiAccumulator {
public:
    void add(double y, double b) {
        const double base = y + prev_b_;
        q_ += 0.5 * base * base - 0.5 * b * b;
        y_ += y;
        y2_ += y * y;
        b_ += b;
        prev_b_ = b;
        ++count_;
    }

    void merge(const AoeiAccumulator& o) {
        q_ += o.q_.value();
        y_ += o.y_.value();
        y2_ += o.y2_.value();
        b_ += o.b_.value();
        count_ += o.count_;
        if (o.count_ > 0) prev_b_ = o.prev_b_;
    }

    std::uint64_t count() const noexcept { return count_; }
    double sum_q() const noexcept { return static_cast<double>(q_.value()); }
    double sum_y() const noexcept { return static_cast<double>(y_.value()); }
    double mean_y() const noexcept { return static_cast<double>(y_.value() / count_); }
    double mean_y2() const noexcept { return static_cast<double>(y2_.value() / count_); }
    double mean_b() const noexcept { return static_cast<double>(b_.value() / count_); }

    double delta_e() const {
        if (count_ < 2) throw insufficient_data("C-AoEI needs at least 2 departures");
        return static_cast<double>(q_.value() / y_.value());
    }

    AoeiReport report() const {
        AoeiReport r;
        r.delta_e = delta_e();
        r.e_y = mean_y();
        r.e_y2 = mean_y2();
        r.e_b = mean_b();
        r.mode = AoeiMode::empirical;
        r.departures = count_;
        return r;
    }

private:
    CompensatedSum q_, y_, y2_, b_;
    double prev_b_ = 0.0;
    std::uint64_t count_ = 0;
};

template <class YRange, class BRange>
AoeiReport empirical_caoei(const YRange& y, const BRange& b) {
    if (std::size(y) != std::size(b)) throw invalid_parameter("Y and B sequences differ in length");
    AoeiAccumulator acc;
    auto bi = std::begin(b);
    for (auto yi = std::begin(y); yi != std::end(y); ++yi, ++bi)
        acc.add(static_cast<double>(*yi), static_cast<double>(*bi));
    return acc.report();
}

}  // namespace lharq
