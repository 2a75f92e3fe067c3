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

// Counter-based random streams.
//
// Every random quantity in a simulation is addressed by (seed, slot, purpose,
// lane). Two runs that share a seed see the same channel, arrival and decoding
// draws in every slot regardless of which protocol decisions were taken, which
// gives common random numbers across sweep points for free and makes each grid
// point reproducible in isolation.
//
// Seed splitting rule: trial t of a run with master seed s uses
//     derive_seed(s, t) = splitmix64(s ^ splitmix64(t + 0x9E3779B97F4A7C15)).

#include <cstdint>
#include <limits>

namespace lharq {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

// Top 53 bits to [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

enum class Purpose : std::uint64_t {
    satellite_fading = 1,
    interferer_fading = 2,
    feedforward = 3,
    backtrack = 4,
    arrival = 5,
    selection = 6,
    delivery = 7,
    bank = 8,
};

// Small-state UniformRandomBitGenerator (splitmix64 sequence). Cheap to
// construct, so one is made per (slot, purpose) when a distribution needs more
// than one uniform.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : state_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr double uniform() noexcept { return to_unit((*this)()); }

private:
    std::uint64_t state_;
};

class SlotStreams {
public:
    explicit constexpr SlotStreams(std::uint64_t seed) noexcept : seed_(splitmix64(seed)) {}

    constexpr std::uint64_t seed() const noexcept { return seed_; }

    constexpr std::uint64_t key(std::int64_t slot, Purpose purpose, std::uint64_t lane = 0) const noexcept {
        std::uint64_t k = seed_ ^ splitmix64(static_cast<std::uint64_t>(slot) * 0xD1B54A32D192ED03ULL);
        k = splitmix64(k ^ (static_cast<std::uint64_t>(purpose) << 56) ^ (lane * 0xA24BAED4963EE407ULL));
        return k;
    }

    constexpr CounterRng stream(std::int64_t slot, Purpose purpose, std::uint64_t lane = 0) const noexcept {
        return CounterRng(key(slot, purpose, lane));
    }

    constexpr double uniform(std::int64_t slot, Purpose purpose, std::uint64_t lane = 0) const noexcept {
        return to_unit(splitmix64(key(slot, purpose, lane)));
    }

private:
    std::uint64_t seed_;
};

}  // namespace lharq
