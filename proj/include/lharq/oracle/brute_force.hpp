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

// Straight-line renewal simulation of truncated L-HARQ under i.i.d. errors.
// Written without the engine so the two can be checked against each other.

#include <cstdint>
#include <random>

#include "lharq/random.hpp"

namespace lharq::oracle {

// Sequential draws from mt19937_64; the slot argument is ignored.
class SequentialDraws {
public:
    explicit SequentialDraws(std::uint64_t seed) : gen_(seed) {}
    double ff(std::int64_t) { return u_(gen_); }
    double bt(std::int64_t) { return u_(gen_); }

private:
    std::mt19937_64 gen_;
    std::uniform_real_distribution<double> u_{0.0, 1.0};
};

// Same per-slot uniforms the engine consumes for a given seed.
class SlotIndexedDraws {
public:
    explicit SlotIndexedDraws(std::uint64_t seed) : s_(seed) {}
    double ff(std::int64_t slot) { return s_.uniform(slot, Purpose::feedforward); }
    double bt(std::int64_t slot) { return s_.uniform(slot, Purpose::backtrack); }

private:
    SlotStreams s_;
};

struct BruteForceResult {
    double mean_y = 0.0;
    double mean_y2 = 0.0;
    double mean_b = 0.0;
    double delta_e = 0.0;
    std::uint64_t departures = 0;
    std::int64_t slots = 0;
};

template <class Draws>
BruteForceResult brute_force_caoei(double p_ff, double p_bt, int K, std::uint64_t departures, Draws& draws) {
    long double area = 0.0L, sy = 0.0L, sy2 = 0.0L, sb = 0.0L;
    std::int64_t t = 0;
    long double prev_b = 0.0L;
    for (std::uint64_t m = 0; m < departures; ++m) {
        std::int64_t y = 0;
        int b = 0;
        bool done = false;
        while (!done) {
            const std::int64_t first = t;
            for (int n = 1; n <= K; ++n) {
                const double u = draws.ff(t);
                ++t;
                ++y;
                if (u >= p_ff) {
                    for (int j = n - 1; j >= 1; --j) {
                        if (draws.bt(first + j - 1) < p_bt) break;
                        ++b;
                    }
                    done = true;
                    break;
                }
            }
        }
        const long double yl = static_cast<long double>(y);
        area += (yl + prev_b) * (yl + prev_b) / 2.0L - static_cast<long double>(b) * b / 2.0L;
        sy += yl;
        sy2 += yl * yl;
        sb += b;
        prev_b = b;
    }
    BruteForceResult r;
    const long double n = static_cast<long double>(departures);
    r.mean_y = static_cast<double>(sy / n);
    r.mean_y2 = static_cast<double>(sy2 / n);
    r.mean_b = static_cast<double>(sb / n);
    r.delta_e = static_cast<double>(area / sy);
    r.departures = departures;
    r.slots = t;
    return r;
}

inline BruteForceResult brute_force_caoei(double p_ff, double p_bt, int K, std::uint64_t departures,
                                          std::uint64_t seed) {
    SequentialDraws d(seed);
    return brute_force_caoei(p_ff, p_bt, K, departures, d);
}

}  // namespace lharq::oracle
