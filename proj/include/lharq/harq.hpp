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

// Truncated L-HARQ circle engine.
//
// One round occupies one slot and carries a fresh update generated in that
// slot; rounds after the first also carry rho*N_s bits of the previous
// undecoded packet. A feedforward success at round n ends the circle and
// triggers backtracking over rounds n-1, n-2, ..., 1, which stops at the first
// failure. A circle that fails K rounds is discarded; its slots still count
// towards the next interdeparture time.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "lharq/channel.hpp"
#include "lharq/errors.hpp"
#include "lharq/fbl.hpp"
#include "lharq/random.hpp"

namespace lharq {

struct HarqConfig {
    int max_rounds = 2;       // K
    double rho = 0.3;         // packet mixing rate
    FbcParams fbc{};
    double gamma_th = 1.0;    // SINR decision threshold (linear)

    void validate() const {
        detail::require(max_rounds >= 1, "K must be >= 1");
        detail::require(rho > 0.0 && rho < 1.0, "mixing rate rho must lie in (0, 1)");
        fbc.validate();
        if (!(rho < fbc.rate))
            throw constraint_violation("mixing rate must stay below every coding rate in use (rho < min R)");
        detail::require(gamma_th >= 0.0, "SINR threshold must be >= 0");
    }
};

struct MixedPacket {
    int new_bits = 0;
    int prior_bits = 0;
    std::int64_t gen_slot = 0;
    std::optional<std::int64_t> prior_gen_slot;

    int total_bits() const noexcept { return new_bits + prior_bits; }
};

// `prev` is the generation slot of the previous undecoded packet, if any.
inline MixedPacket mix_packet(std::optional<std::int64_t> prev, std::int64_t fresh, const HarqConfig& cfg,
                              double rate) {
    detail::require(rate > 0.0, "coding rate must be > 0");
    const int capacity = static_cast<int>(std::lround(rate * cfg.fbc.packet_bits));
    MixedPacket pkt;
    pkt.gen_slot = fresh;
    if (!prev) {
        pkt.new_bits = capacity;
        return pkt;
    }
    if (!(cfg.rho < rate))
        throw constraint_violation("mixing rate must stay below the coding rate (rho < R)");
    pkt.prior_bits = static_cast<int>(std::lround(cfg.rho * cfg.fbc.packet_bits));
    pkt.prior_gen_slot = prev;
    pkt.new_bits = capacity - pkt.prior_bits;
    return pkt;
}

// Channel state realised in one round. `sinr` is NaN for abstract error models.
struct RoundDraw {
    double sinr = std::numeric_limits<double>::quiet_NaN();
    double ff_error = 0.0;
};

template <class M>
concept ErrorModel = requires(const M& m, const SlotStreams& s, std::int64_t slot, const RoundDraw& d) {
    { m.draw_round(s, slot) } -> std::same_as<RoundDraw>;
    { m.backtrack_failure(d) } -> std::convertible_to<double>;
};

// Constant per-round feedforward error and per-step backtracking failure.
struct IidErrors {
    double p_ff = 0.0;
    double p_bt = 1.0;

    RoundDraw draw_round(const SlotStreams&, std::int64_t) const noexcept { return {std::numeric_limits<double>::quiet_NaN(), p_ff}; }
    double backtrack_failure(const RoundDraw&) const noexcept { return p_bt; }
};

enum class DecodingMode { threshold, finite_blocklength };
enum class BacktrackSource { constant, finite_blocklength };

// Errors driven by per-slot shadowed-Rician SINR draws. Threshold mode fails a
// round iff SINR < gamma_th; finite-blocklength mode fails it with the normal
// approximation at the drawn SINR. Backtracking either uses a configured
// constant or the per-round finite-blocklength ratio at the stored SINR.
class ChannelErrors {
public:
    ChannelErrors(ChannelSampler sampler, DecodingMode mode, HarqConfig cfg, BacktrackSource bt, double p_bt)
        : sampler_(std::move(sampler)), mode_(mode), cfg_(cfg), bt_(bt), p_bt_(p_bt) {
        detail::require(p_bt >= 0.0 && p_bt <= 1.0, "backtracking failure probability must lie in [0, 1]");
    }

    RoundDraw draw_round(const SlotStreams& streams, std::int64_t slot) const {
        RoundDraw d;
        d.sinr = sampler_.draw_sinr(streams, slot);
        d.ff_error = error_at(d.sinr);
        return d;
    }

    double error_at(double sinr) const {
        if (mode_ == DecodingMode::threshold) return sinr < cfg_.gamma_th ? 1.0 : 0.0;
        return fbl_error_at(sinr, cfg_.fbc.rate, cfg_.fbc.blocklength);
    }

    double backtrack_failure(const RoundDraw& d) const {
        if (bt_ == BacktrackSource::constant) return p_bt_;
        const double den = fbl_error_at(d.sinr, cfg_.fbc.rate, cfg_.fbc.blocklength);
        if (!(den > 0.0)) return 1.0;
        return std::clamp(fbl_error_at(d.sinr, cfg_.fbc.rate, cfg_.rho * cfg_.fbc.blocklength) / den, 0.0, 1.0);
    }

    const ChannelSampler& sampler() const noexcept { return sampler_; }
    DecodingMode mode() const noexcept { return mode_; }
    BacktrackSource backtrack_source() const noexcept { return bt_; }

private:
    ChannelSampler sampler_;
    DecodingMode mode_;
    HarqConfig cfg_;
    BacktrackSource bt_;
    double p_bt_;
};

// One L-HARQ circle as seen by the receiver.
struct CycleRecord {
    std::int64_t circle_id = 0;
    std::int64_t first_slot = 0;   // generation slot of round 1
    int rounds_used = 0;
    bool ff_success = false;
    bool truncated = false;
    int backtrack_depth = 0;       // B, slots
    std::int64_t departure_slot = -1;  // end of the successful round; -1 when truncated

    // Round k (1-based) carries the update generated in slot first_slot + k - 1.
    std::vector<std::int64_t> generation_slots() const {
        std::vector<std::int64_t> g(static_cast<std::size_t>(rounds_used));
        for (int k = 0; k < rounds_used; ++k) g[static_cast<std::size_t>(k)] = first_slot + k;
        return g;
    }
};

enum class SlotEventKind { ff_failure, ff_success, bt_success, bt_failure, truncated };

inline std::string_view to_string(SlotEventKind k) {
    switch (k) {
        case SlotEventKind::ff_failure: return "ff_failure";
        case SlotEventKind::ff_success: return "ff_success";
        case SlotEventKind::bt_success: return "bt_success";
        case SlotEventKind::bt_failure: return "bt_failure";
        case SlotEventKind::truncated: return "truncated";
    }
    return "unknown";
}

struct SlotEvent {
    std::int64_t slot;
    SlotEventKind kind;
    std::int64_t circle_id;
    int round;
    int depth;
};

// Writes one JSON object per line: {"slot":..,"event":..,"circle":..,"round":..,"depth":..}
inline void write_event_line(std::ostream& os, const SlotEvent& e) {
    os << "{\"slot\":" << e.slot << ",\"event\":\"" << to_string(e.kind) << "\",\"circle\":" << e.circle_id
       << ",\"round\":" << e.round << ",\"depth\":" << e.depth << "}\n";
}

using EventSink = std::function<void(const SlotEvent&)>;

enum class RoundOutcome { ff_success, ff_failure };

struct Departure {
    std::int64_t interdeparture = 0;  // Y, slots
    int backtrack_depth = 0;          // B, slots
    int rounds = 0;                   // n of the successful circle
    int truncated_circles = 0;
    std::int64_t departure_slot = 0;
};

template <ErrorModel Model>
class HarqEngine {
public:
    // Live circle. Rounds are appended by attempt_round().
    struct Circle {
        std::int64_t id = 0;
        std::int64_t first_slot = 0;
        std::vector<RoundDraw> rounds;
        std::vector<MixedPacket> packets;
        bool ff_success = false;
        bool truncated = false;

        int rounds_used() const noexcept { return static_cast<int>(rounds.size()); }
        bool finished() const noexcept { return ff_success || truncated; }
    };

    HarqEngine(HarqConfig cfg, Model model, std::uint64_t seed, bool track_packets = false)
        : cfg_(cfg), model_(std::move(model)), streams_(seed), track_packets_(track_packets) {
        cfg_.validate();
    }

    void set_event_sink(EventSink sink) { sink_ = std::move(sink); }

    const HarqConfig& config() const noexcept { return cfg_; }
    const Model& model() const noexcept { return model_; }
    const SlotStreams& streams() const noexcept { return streams_; }
    std::int64_t slots_elapsed() const noexcept { return slot_; }

    Circle open_circle() {
        Circle c;
        c.id = next_circle_++;
        c.first_slot = slot_;
        c.rounds.reserve(static_cast<std::size_t>(cfg_.max_rounds));
        return c;
    }

    RoundOutcome attempt_round(Circle& c) {
        if (c.finished() || c.rounds_used() >= cfg_.max_rounds)
            throw protocol_state_error("attempt_round on a circle with no remaining rounds");
        const std::int64_t slot = slot_++;
        if (track_packets_) {
            std::optional<std::int64_t> prev;
            if (!c.rounds.empty()) prev = slot - 1;
            c.packets.push_back(mix_packet(prev, slot, cfg_, cfg_.fbc.rate));
        }
        const RoundDraw draw = model_.draw_round(streams_, slot);
        c.rounds.push_back(draw);
        const int round = c.rounds_used();
        const bool fail = streams_.uniform(slot, Purpose::feedforward) < draw.ff_error;
        if (!fail) {
            c.ff_success = true;
            emit(slot, SlotEventKind::ff_success, c.id, round, 0);
            return RoundOutcome::ff_success;
        }
        emit(slot, SlotEventKind::ff_failure, c.id, round, 0);
        if (round == cfg_.max_rounds) {
            c.truncated = true;
            emit(slot, SlotEventKind::truncated, c.id, round, 0);
        }
        return RoundOutcome::ff_failure;
    }

    // Walks back from round n-1; step j recovers round j with probability
    // 1 - P^BT(round j). Returns the number of recovered packets.
    int backtrack(const Circle& c) const {
        if (!c.ff_success) throw protocol_state_error("backtrack called on a circle without feedforward success");
        int depth = 0;
        for (int j = c.rounds_used() - 1; j >= 1; --j) {
            const auto& draw = c.rounds[static_cast<std::size_t>(j - 1)];
            const std::int64_t slot = c.first_slot + j - 1;
            const double p_fail = model_.backtrack_failure(draw);
            if (streams_.uniform(slot, Purpose::backtrack) < p_fail) {
                emit(slot, SlotEventKind::bt_failure, c.id, j, depth);
                break;
            }
            ++depth;
            emit(slot, SlotEventKind::bt_success, c.id, j, depth);
        }
        return depth;
    }

    CycleRecord run_circle() {
        Circle c = open_circle();
        while (!c.finished()) attempt_round(c);
        CycleRecord r;
        r.circle_id = c.id;
        r.first_slot = c.first_slot;
        r.rounds_used = c.rounds_used();
        r.ff_success = c.ff_success;
        r.truncated = c.truncated;
        if (c.ff_success) {
            r.backtrack_depth = backtrack(c);
            r.departure_slot = slot_;
        }
        last_circle_ = std::move(c);
        return r;
    }

    // Chains circles until the next feedforward success.
    Departure next_departure(std::vector<CycleRecord>* records = nullptr) {
        Departure d;
        const std::int64_t start = slot_;
        for (;;) {
            CycleRecord r = run_circle();
            if (records) records->push_back(r);
            if (r.ff_success) {
                d.backtrack_depth = r.backtrack_depth;
                d.rounds = r.rounds_used;
                d.departure_slot = r.departure_slot;
                break;
            }
            ++d.truncated_circles;
        }
        d.interdeparture = slot_ - start;
        return d;
    }

    const Circle& last_circle() const noexcept { return last_circle_; }

private:
    void emit(std::int64_t slot, SlotEventKind kind, std::int64_t circle, int round, int depth) const {
        if (sink_) sink_(SlotEvent{slot, kind, circle, round, depth});
    }

    HarqConfig cfg_;
    Model model_;
    SlotStreams streams_;
    bool track_packets_;
    std::int64_t slot_ = 0;
    std::int64_t next_circle_ = 0;
    Circle last_circle_;
    EventSink sink_;
};

struct DepartureSequence {
    std::vector<CycleRecord> records;      // every circle, truncated ones included
    std::vector<std::int64_t> interdeparture;  // Y_m
    std::vector<int> backtrack_depth;          // B_m
    std::int64_t slots = 0;
};

template <ErrorModel Model>
DepartureSequence run_departure_sequence(const HarqConfig& cfg, Model model, std::size_t num_departures,
                                         std::uint64_t seed) {
    detail::require(num_departures >= 1, "need at least one departure");
    HarqEngine<Model> engine(cfg, std::move(model), seed);
    DepartureSequence seq;
    seq.interdeparture.reserve(num_departures);
    seq.backtrack_depth.reserve(num_departures);
    for (std::size_t m = 0; m < num_departures; ++m) {
        const Departure d = engine.next_departure(&seq.records);
        seq.interdeparture.push_back(d.interdeparture);
        seq.backtrack_depth.push_back(d.backtrack_depth);
    }
    seq.slots = engine.slots_elapsed();
    return seq;
}

}  // namespace lharq
