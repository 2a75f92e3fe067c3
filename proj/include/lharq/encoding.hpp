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

// Adaptive encoded retransmission at the packet-counting level.
//
// An encoded packet is modelled as a random scaling of one selected
// unacknowledged packet, so it is useful to the receiver iff the receiver has
// not decoded that packet yet. No Galois-field arithmetic is performed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "lharq/errors.hpp"
#include "lharq/random.hpp"

namespace lharq {

struct EncodingPolicy {
    double phi_th = 0.5;
    double beta = 1.0;
    int feedback_delay = 2;  // Z, slots

    void validate() const {
        detail::require(phi_th >= 0.0 && phi_th <= 1.0, "phi_th must lie in [0, 1]");
        detail::require(beta >= 0.0 && std::isfinite(beta), "beta must be finite and >= 0");
        detail::require(feedback_delay >= 0, "feedback delay Z must be >= 0");
    }
};

struct PacketRef {
    std::int64_t id = 0;
    std::int64_t gen_slot = 0;
};

struct SenderState {
    std::vector<PacketRef> phi;  // unacknowledged, ascending generation
    std::int64_t d = 0;          // positive ACKs for encoded packets this slot
    std::int64_t dbar = 0;       // in-flight encoded packets that may still help
    std::int64_t sent = 0;       // S_z
    std::int64_t useful = 0;     // U_z

    std::int64_t n() const noexcept { return static_cast<std::int64_t>(phi.size()); }
};

// Binomial tail with exponent dbar - i (the printed in-text form has d - i,
// which does not sum to a probability mass).
inline double decoding_probability(std::int64_t n_phi, std::int64_t d, std::int64_t dbar, double rate) {
    if (n_phi < 0 || d < 0 || dbar < 0) throw invalid_state("decoding probability: negative packet counts");
    detail::require(rate >= 1.0, "encoding rate R_z must be >= 1");
    if (n_phi > d + dbar) return 1.0;
    const std::int64_t top = n_phi - d;
    if (top < 0) return 0.0;
    const double p = 1.0 / rate;
    double sum = 0.0;
    for (std::int64_t i = 0; i <= std::min(top, dbar); ++i) {
        const double log_c = std::lgamma(dbar + 1.0) - std::lgamma(i + 1.0) - std::lgamma(dbar - i + 1.0);
        double term;
        if (p == 1.0)
            term = i == dbar ? 1.0 : 0.0;
        else
            term = std::exp(log_c + i * std::log(p) + (dbar - i) * std::log1p(-p));
        sum += term;
    }
    return std::clamp(sum, 0.0, 1.0);
}

inline double decoding_probability(const SenderState& s, double rate) {
    return decoding_probability(s.n(), s.d, s.dbar, rate);
}

// Raw weights exp(-(N - i) beta), i = 1..N.
inline std::vector<double> selection_weights(std::size_t n, double beta) {
    std::vector<double> w(n);
    for (std::size_t i = 1; i <= n; ++i) w[i - 1] = std::exp(-static_cast<double>(n - i) * beta);
    return w;
}

inline std::vector<double> selection_distribution(std::size_t n, double beta) {
    auto w = selection_weights(n, beta);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= total;
    return w;
}

// Returns a position in `phi` (0-based). Sampling is by inverse CDF over the
// packets ordered oldest to newest, driven by one uniform `u` in [0, 1).
inline std::size_t select_packet(std::span<const PacketRef> phi, double beta, double u) {
    if (phi.empty()) throw invalid_state("select_packet on an empty unacknowledged set");
    std::vector<std::size_t> order(phi.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return phi[a].gen_slot < phi[b].gen_slot; });
    const auto w = selection_distribution(phi.size(), beta);
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        acc += w[k];
        if (u < acc) return order[k];
    }
    return order.back();
}

enum class Action { transmit_new, transmit_encoded, silent };

inline std::string_view to_string(Action a) {
    switch (a) {
        case Action::transmit_new: return "new";
        case Action::transmit_encoded: return "encoded";
        case Action::silent: return "silent";
    }
    return "unknown";
}

struct Decision {
    Action action = Action::silent;
    std::size_t index = 0;  // position in phi for transmit_encoded
    double p_d = 0.0;       // NaN when not evaluated
};

inline Decision decide_action(const SenderState& s, bool new_arrival, const EncodingPolicy& policy, double rate,
                              double u_select) {
    Decision d;
    if (new_arrival) {
        d.action = Action::transmit_new;
        d.p_d = std::nan("");
        return d;
    }
    d.p_d = decoding_probability(s, rate);
    if (d.p_d > policy.phi_th && !s.phi.empty()) {
        d.action = Action::transmit_encoded;
        d.index = select_packet(s.phi, policy.beta, u_select);
    }
    return d;
}

inline double transmission_efficiency(std::int64_t s_z, std::int64_t u_z) {
    detail::require(u_z >= 0 && s_z >= u_z, "efficiency needs S_z >= U_z >= 0");
    return s_z == 0 ? 0.0 : static_cast<double>(u_z) / static_cast<double>(s_z);
}

inline double packet_delivery_ratio(std::int64_t delivered_independent, std::int64_t generated) {
    detail::require(delivered_independent >= 0 && generated >= 0, "PDR counts must be >= 0");
    return generated == 0 ? 0.0 : static_cast<double>(delivered_independent) / static_cast<double>(generated);
}

struct ActionRecord {
    std::int64_t slot;
    Action action;
    std::int64_t packet_id;  // -1 when silent
    double p_d;
};

// {"slot":..,"action":..,"packet":..,"p_d":..}; p_d is null in arrival slots.
inline void write_action_line(std::ostream& os, const ActionRecord& r) {
    os << "{\"slot\":" << r.slot << ",\"action\":\"" << to_string(r.action) << "\",\"packet\":" << r.packet_id
       << ",\"p_d\":";
    if (std::isnan(r.p_d))
        os << "null";
    else
        os << r.p_d;
    os << "}\n";
}

struct EncodingSimConfig {
    EncodingPolicy policy{};
    double erasure_prob = 0.3;     // per-transmission loss probability
    double arrival_prob = 0.5;     // Bernoulli update arrivals per slot
    std::size_t buffer_capacity = 100;
    std::int64_t slots = 100000;
    bool traditional = false;      // retransmit newest unacknowledged packet, no gating

    // Redundancy factor of the erasure channel, R_z = 1 / (1 - erasure).
    double rate() const { return erasure_prob >= 1.0 ? 1.0 : 1.0 / (1.0 - erasure_prob); }

    void validate() const {
        policy.validate();
        detail::require(erasure_prob >= 0.0 && erasure_prob < 1.0, "erasure probability must lie in [0, 1)");
        detail::require(arrival_prob >= 0.0 && arrival_prob <= 1.0, "arrival probability must lie in [0, 1]");
        detail::require(buffer_capacity >= 1, "buffer capacity must be >= 1");
        detail::require(slots >= 1, "need at least one slot");
    }
};

struct EncodingResult {
    std::int64_t slots = 0;
    std::int64_t generated = 0;
    std::int64_t sent = 0;        // all transmissions
    std::int64_t received = 0;    // S_z: transmissions that reached the destination
    std::int64_t useful = 0;      // U_z
    std::int64_t fresh_sent = 0;
    std::int64_t encoded_sent = 0;
    std::int64_t silent_slots = 0;
    std::int64_t dropped = 0;     // buffer overflow
    double age_area = 0.0;
    std::int64_t age_slots = 0;

    double efficiency() const { return transmission_efficiency(received, useful); }
    double pdr() const { return packet_delivery_ratio(useful, generated); }
    // Time-average age of the freshest decoded update, from the first decode on.
    double delta_e() const { return age_slots == 0 ? std::nan("") : age_area / static_cast<double>(age_slots); }
};

using ActionSink = std::function<void(const ActionRecord&)>;

class EncodingSimulator {
public:
    EncodingSimulator(EncodingSimConfig cfg, std::uint64_t seed) : cfg_(cfg), streams_(seed) { cfg_.validate(); }

    void set_action_sink(ActionSink sink) { sink_ = std::move(sink); }

    EncodingResult run() {
        const int Z = cfg_.policy.feedback_delay;
        const double rate = cfg_.rate();
        std::vector<Tx> tx(static_cast<std::size_t>(cfg_.slots));
        std::vector<Packet> packets;
        std::deque<PacketRef> phi;
        std::vector<std::int64_t> pending_removal;
        std::int64_t freshest = -1;
        EncodingResult res;
        res.slots = cfg_.slots;

        for (std::int64_t z = 0; z < cfg_.slots; ++z) {
            for (auto id : pending_removal) erase(phi, id);
            pending_removal.clear();

            SenderState st;
            const std::int64_t h = z - Z - 1;
            if (h >= 0) {
                const Tx& t = tx[static_cast<std::size_t>(h)];
                auto& pk = t.packet >= 0 ? packets[static_cast<std::size_t>(t.packet)] : dummy_;
                if (t.kind == Action::transmit_new && !t.delivered && !pk.sender_acked) {
                    phi.push_back({t.packet, pk.gen_slot});
                    if (phi.size() > cfg_.buffer_capacity) {
                        phi.pop_front();
                        ++res.dropped;
                    }
                } else if (t.kind == Action::transmit_encoded && t.delivered && !pk.sender_acked) {
                    pk.sender_acked = true;
                    if (contains(phi, t.packet)) {
                        ++st.d;
                        pending_removal.push_back(t.packet);
                    }
                } else if (t.delivered && t.packet >= 0) {
                    pk.sender_acked = true;
                }
            }
            st.phi.assign(phi.begin(), phi.end());
            for (std::int64_t k = std::max<std::int64_t>(0, z - Z); k < z; ++k) {
                const Tx& t = tx[static_cast<std::size_t>(k)];
                if (t.kind == Action::transmit_encoded && contains(phi, t.packet)) ++st.dbar;
            }

            const bool arrival = streams_.uniform(z, Purpose::arrival) < cfg_.arrival_prob;
            Decision dec;
            if (cfg_.traditional) {
                dec.p_d = std::nan("");
                if (arrival)
                    dec.action = Action::transmit_new;
                else if (!phi.empty()) {
                    dec.action = Action::transmit_encoded;
                    dec.index = phi.size() - 1;
                }
            } else {
                dec = decide_action(st, arrival, cfg_.policy, rate, streams_.uniform(z, Purpose::selection));
            }

            Tx& t = tx[static_cast<std::size_t>(z)];
            t.kind = dec.action;
            if (dec.action == Action::transmit_new) {
                t.packet = static_cast<std::int64_t>(packets.size());
                packets.push_back({z, false, false});
                ++res.generated;
                ++res.fresh_sent;
            } else if (dec.action == Action::transmit_encoded) {
                t.packet = st.phi[dec.index].id;
                ++res.encoded_sent;
            } else {
                ++res.silent_slots;
            }
            if (sink_) sink_(ActionRecord{z, dec.action, t.packet, dec.p_d});

            if (t.packet >= 0) {
                ++res.sent;
                t.delivered = streams_.uniform(z, Purpose::delivery) >= cfg_.erasure_prob;
                if (t.delivered) {
                    ++res.received;
                    auto& pk = packets[static_cast<std::size_t>(t.packet)];
                    if (!pk.decoded) {
                        pk.decoded = true;
                        ++res.useful;
                        freshest = std::max(freshest, pk.gen_slot);
                    }
                }
            }
            if (freshest >= 0) {
                res.age_area += static_cast<double>(z - freshest) + 0.5;
                ++res.age_slots;
            }
        }
        return res;
    }

private:
    struct Packet {
        std::int64_t gen_slot = 0;
        bool decoded = false;       // at the receiver
        bool sender_acked = false;  // delivery known to the sender
    };
    struct Tx {
        Action kind = Action::silent;
        std::int64_t packet = -1;
        bool delivered = false;
    };

    static bool contains(const std::deque<PacketRef>& phi, std::int64_t id) {
        return std::any_of(phi.begin(), phi.end(), [id](const PacketRef& p) { return p.id == id; });
    }
    static void erase(std::deque<PacketRef>& phi, std::int64_t id) {
        auto it = std::find_if(phi.begin(), phi.end(), [id](const PacketRef& p) { return p.id == id; });
        if (it != phi.end()) phi.erase(it);
    }

    EncodingSimConfig cfg_;
    SlotStreams streams_;
    ActionSink sink_;
    Packet dummy_{};
};

}  // namespace lharq
