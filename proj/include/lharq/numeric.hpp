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

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace lharq {

// Neumaier compensated accumulator in long double.
class CompensatedSum {
public:
    CompensatedSum& operator+=(long double x) noexcept {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    long double value() const noexcept { return sum_ + carry_; }

private:
    long double sum_ = 0.0L;
    long double carry_ = 0.0L;
};

inline long double ipow(long double base, int exponent) noexcept {
    long double result = 1.0L;
    long double b = base;
    unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    while (e) {
        if (e & 1U) result *= b;
        b *= b;
        e >>= 1U;
    }
    return exponent < 0 ? 1.0L / result : result;
}

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double linear_to_db(double x) noexcept { return 10.0 * std::log10(x); }

// Fixed %.12g rendering so CSV bytes do not depend on stream state.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void write_csv_number(std::ostream& os, double x) { os << format_number(x); }

}  // namespace lharq
