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

// Monte Carlo experiment driver.
//
// Every grid point reuses the same per-trial seeds (common random numbers),
// derived from the master seed and the trial index only. Tasks run on a small
// thread pool and are merged in grid order, so output bytes do not depend on
// the thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lharq/aoei.hpp"
#include "lharq/channel.hpp"
#include "lharq/encoding.hpp"
#include "lharq/errors.hpp"
#include "lharq/fbl.hpp"
#include "lharq/harq.hpp"
#include "lharq/numeric.hpp"
#include "lharq/random.hpp"

#ifndef LHARQ_VERSION
#define LHARQ_VERSION "0.0.0"
#endif

namespace lharq {

enum class SystemModel { lharq, encoding };
enum class ErrorSource { iid, threshold, finite_blocklength };

inline std::string_view to_string(SystemModel m) { return m == SystemModel::lharq ? "lharq" : "encoding"; }
inline std::string_view to_string(ErrorSource e) {
    switch (e) {
        case ErrorSource::iid: return "iid";
        case ErrorSource::threshold: return "threshold";
        case ErrorSource::finite_blocklength: return "fbl";
    }
    return "unknown";
}

// Interferers are placed at distance_m * (1 + spacing * j), j = 0..M-1.
// Powers are spread linearly between p_min and imbalance * p_min with the
// total fixed at M * power_w; the strongest power goes to the nearest
// (largest attenuation factor) interferer.
struct InterferenceSpec {
    int num_gbs = 0;
    InterfererSpec base{};
    double spacing = 0.5;
    double imbalance = 1.0;  // delta = max power / min power

    void validate() const {
        detail::require(num_gbs >= 0, "GBS count must be >= 0");
        detail::require(spacing >= 0.0, "interferer spacing must be >= 0");
        detail::require(imbalance >= 1.0, "power imbalance ratio must be >= 1");
        base.validate();
    }

    std::vector<InterfererSpec> build() const {
        validate();
        std::vector<InterfererSpec> out;
        const int M = num_gbs;
        if (M == 0) return out;
        const double total = M * base.power_w;
        // p_j = p_min (1 + (delta - 1) t_j), t_j = 1 - j/(M-1), summing to total.
        std::vector<double> shape(static_cast<std::size_t>(M), 1.0);
        if (M > 1)
            for (int j = 0; j < M; ++j) shape[static_cast<std::size_t>(j)] = 1.0 + (imbalance - 1.0) * (1.0 - j / (M - 1.0));
        double s = 0.0;
        for (double x : shape) s += x;
        for (int j = 0; j < M; ++j) {
            InterfererSpec it = base;
            it.distance_m = base.distance_m * (1.0 + spacing * j);
            it.power_w = total * shape[static_cast<std::size_t>(j)] / s;
            out.push_back(it);
        }
        return out;
    }
};

enum class Axis {
    none,
    snr_db,
    sat_power_dbm,
    gamma_th_db,
    k,
    rho,
    phi_th,
    beta,
    num_gbs,
    pathloss_exponent,
    power_imbalance,
    p_ff,
    p_bt
};

inline constexpr std::pair<Axis, std::string_view> axis_names[] = {
    {Axis::snr_db, "snr_db"},
    {Axis::sat_power_dbm, "sat_power_dbm"},
    {Axis::gamma_th_db, "gamma_th_db"},
    {Axis::k, "k"},
    {Axis::rho, "rho"},
    {Axis::phi_th, "phi_th"},
    {Axis::beta, "beta"},
    {Axis::num_gbs, "num_gbs"},
    {Axis::pathloss_exponent, "pathloss_exponent"},
    {Axis::power_imbalance, "power_imbalance"},
    {Axis::p_ff, "p_ff"},
    {Axis::p_bt, "p_bt"},
};

inline std::string_view to_string(Axis a) {
    for (const auto& [ax, name] : axis_names)
        if (ax == a) return name;
    return "none";
}

inline std::optional<Axis> parse_axis(std::string_view s) {
    for (const auto& [ax, name] : axis_names)
        if (name == s) return ax;
    if (s == "none") return Axis::none;
    return std::nullopt;
}

struct SweepAxis {
    Axis axis = Axis::none;
    std::vector<double> values;
};

struct ExperimentSpec {
    std::string name = "experiment";
    SystemModel model = SystemModel::lharq;
    ErrorSource errors = ErrorSource::threshold;
    BacktrackSource backtrack = BacktrackSource::constant;

    ShadowedRicianParams fading{};
    LinkBudget link{};
    InterferenceSpec interference{};
    HarqConfig harq{};
    double gamma_th_db = 0.0;  // mirrored into harq.gamma_th
    double p_ff = 0.5;         // iid error source
    double p_bt = 0.2;         // constant backtracking failure

    EncodingPolicy policy{};
    double arrival_prob = 0.5;
    std::size_t buffer_capacity = 100;
    bool traditional = false;

    SweepAxis axis1{};
    SweepAxis axis2{};  // optional second axis (phi_th x beta surfaces)

    int trials = 4;
    std::int64_t departures_per_trial = 10000;  // slots per trial for the encoding model
    std::uint64_t master_seed = 1;
    std::size_t bank_size = 100000;
    unsigned threads = 0;  // 0: LHARQ_THREADS or hardware concurrency

    void validate() const {
        detail::require(trials >= 1, "trials must be >= 1");
        detail::require(departures_per_trial >= 2, "need at least 2 departures per trial");
        detail::require(bank_size >= 1, "sample bank must hold at least one draw");
        if (axis1.axis != Axis::none) detail::require(!axis1.values.empty(), "sweep axis has no values");
        if (axis2.axis != Axis::none) detail::require(!axis2.values.empty(), "second sweep axis has no values");
    }
};

// Sets the satellite power so that the interference-free mean SNR equals `db`.
inline void set_mean_snr_db(ExperimentSpec& s, double db) {
    LinkBudget l = s.link;
    l.sat_power_w = 1.0;
    s.link.sat_power_w = db_to_linear(db) / l.mean_snr(s.fading);
}

inline void apply_axis(ExperimentSpec& s, Axis a, double v) {
    switch (a) {
        case Axis::none: break;
        case Axis::snr_db: set_mean_snr_db(s, v); break;
        case Axis::sat_power_dbm: s.link.sat_power_w = dbm_to_watts(v); break;
        case Axis::gamma_th_db: s.gamma_th_db = v; break;
        case Axis::k:
            detail::require(v >= 1 && v == std::floor(v), "K must be a positive integer");
            s.harq.max_rounds = static_cast<int>(v);
            break;
        case Axis::rho: s.harq.rho = v; break;
        case Axis::phi_th: s.policy.phi_th = v; break;
        case Axis::beta: s.policy.beta = v; break;
        case Axis::num_gbs:
            detail::require(v >= 0 && v == std::floor(v), "GBS count must be a nonnegative integer");
            s.interference.num_gbs = static_cast<int>(v);
            break;
        case Axis::pathloss_exponent: s.interference.base.pathloss_exponent = v; break;
        case Axis::power_imbalance: s.interference.imbalance = v; break;
        case Axis::p_ff: s.p_ff = v; break;
        case Axis::p_bt: s.p_bt = v; break;
    }
}

// A threshold of -inf dB maps to a linear threshold of exactly zero.
inline double gamma_th_linear(const ExperimentSpec& s) {
    return std::isinf(s.gamma_th_db) && s.gamma_th_db < 0 ? 0.0 : db_to_linear(s.gamma_th_db);
}

struct SweepRow {
    double axis1 = std::nan("");
    double axis2 = std::nan("");
    double delta_e_empirical = std::nan("");
    double delta_e_ci95 = std::nan("");
    double delta_e_paper_literal = std::nan("");
    double delta_e_corrected = std::nan("");
    double delta_e_protocol = std::nan("");
    double efficiency = std::nan("");
    double pdr = std::nan("");
    double e_y = std::nan("");
    double e_b = std::nan("");
    double p_ff_effective = std::nan("");
    std::int64_t departures = 0;
    std::int64_t slots = 0;
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

namespace detail {

struct TrialStats {
    double delta_e = 0.0;
    double efficiency = 0.0;
    double pdr = 0.0;
    double e_y = 0.0;
    double e_b = 0.0;
    std::int64_t departures = 0;
    std::int64_t slots = 0;
};

struct PointSetup {
    ExperimentSpec spec;
    std::optional<ChannelSampler> sampler;
    double p_ff = std::nan("");  // marginal per-round error, when known
    bool iid_reducible = false;
};

inline constexpr double max_expected_slots = 1e10;

inline PointSetup prepare_point(const ExperimentSpec& base, double v1, double v2) {
    PointSetup p{base, std::nullopt};
    apply_axis(p.spec, base.axis1.axis, v1);
    apply_axis(p.spec, base.axis2.axis, v2);
    auto& s = p.spec;
    s.harq.gamma_th = gamma_th_linear(s);
    s.harq.validate();
    s.policy.validate();
    if (s.errors == ErrorSource::iid) {
        IidErrorModel{s.p_ff, s.p_bt, s.harq.max_rounds}.validate();
        p.p_ff = s.p_ff;
        p.iid_reducible = s.backtrack == BacktrackSource::constant;
        return p;
    }
    LinkBudget link = s.link;
    link.interferers = s.interference.build();
    p.sampler.emplace(s.fading, link);
    const SnrBank bank(*p.sampler, s.bank_size, s.master_seed);
    p.p_ff = s.errors == ErrorSource::threshold ? threshold_error_prob(bank.samples(), s.harq.gamma_th)
                                                : ff_error_prob(bank.samples(), s.harq.fbc);
    p.iid_reducible = s.backtrack == BacktrackSource::constant && p.p_ff < 1.0;
    // Each departure needs a decodable round, about 1/(1 - p_ff) slots apiece.
    if (s.model == SystemModel::lharq) {
        if (!(p.p_ff < 1.0))
            throw divergent_model("no SINR draw in the sample bank is decodable (p_ff = 1)");
        if (static_cast<double>(s.departures_per_trial) / (1.0 - p.p_ff) > max_expected_slots)
            throw divergent_model("p_ff = " + format_number(p.p_ff) + " puts the expected trial length beyond " +
                                  format_number(max_expected_slots) + " slots");
    }
    return p;
}

template <ErrorModel Model>
TrialStats run_lharq_trial(const HarqConfig& cfg, Model model, std::int64_t departures, std::uint64_t seed) {
    HarqEngine<Model> engine(cfg, std::move(model), seed);
    AoeiAccumulator acc;
    long double recovered = 0.0L;
    for (std::int64_t m = 0; m < departures; ++m) {
        const Departure d = engine.next_departure();
        acc.add(static_cast<double>(d.interdeparture), d.backtrack_depth);
        recovered += 1.0L + d.backtrack_depth;
    }
    if (static_cast<long double>(engine.slots_elapsed()) != static_cast<long double>(acc.sum_y()))
        throw invalid_state("slot accounting mismatch: simulated slots differ from the sum of Y");
    TrialStats t;
    t.delta_e = acc.delta_e();
    t.e_y = acc.mean_y();
    t.e_b = acc.mean_b();
    // One packet is generated and sent per slot and each recovery is new.
    t.pdr = static_cast<double>(recovered / engine.slots_elapsed());
    t.efficiency = t.pdr;
    t.departures = departures;
    t.slots = engine.slots_elapsed();
    return t;
}

inline TrialStats run_trial(const PointSetup& p, std::uint64_t seed) {
    const auto& s = p.spec;
    if (s.model == SystemModel::encoding) {
        EncodingSimConfig ec;
        ec.policy = s.policy;
        ec.erasure_prob = p.p_ff;
        ec.arrival_prob = s.arrival_prob;
        ec.buffer_capacity = s.buffer_capacity;
        ec.slots = s.departures_per_trial;
        ec.traditional = s.traditional;
        EncodingSimulator sim(ec, seed);
        const EncodingResult r = sim.run();
        TrialStats t;
        t.delta_e = r.delta_e();
        t.efficiency = r.efficiency();
        t.pdr = r.pdr();
        t.departures = r.useful;
        t.slots = r.slots;
        return t;
    }
    if (s.errors == ErrorSource::iid) return run_lharq_trial(s.harq, IidErrors{s.p_ff, s.p_bt}, s.departures_per_trial, seed);
    const auto mode = s.errors == ErrorSource::threshold ? DecodingMode::threshold : DecodingMode::finite_blocklength;
    return run_lharq_trial(s.harq, ChannelErrors(*p.sampler, mode, s.harq, s.backtrack, s.p_bt),
                           s.departures_per_trial, seed);
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LHARQ_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
}

}  // namespace detail

inline std::uint64_t trial_seed(std::uint64_t master, int trial) {
    return derive_seed(master, static_cast<std::uint64_t>(trial));
}

inline std::vector<SweepRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const std::vector<double> v1 = spec.axis1.axis == Axis::none ? std::vector<double>{std::nan("")} : spec.axis1.values;
    const std::vector<double> v2 = spec.axis2.axis == Axis::none ? std::vector<double>{std::nan("")} : spec.axis2.values;
    const std::size_t points = v1.size() * v2.size();
    const std::size_t T = static_cast<std::size_t>(spec.trials);

    std::vector<detail::PointSetup> setups(points);
    std::vector<std::string> failure(points);
    for (std::size_t i = 0; i < points; ++i) {
        try {
            setups[i] = detail::prepare_point(spec, v1[i / v2.size()], v2[i % v2.size()]);
        } catch (const std::exception& e) {
            failure[i] = e.what();
        }
    }

    std::vector<detail::TrialStats> stats(points * T);
    std::vector<std::string> trial_error(points * T);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task; (task = next.fetch_add(1)) < points * T;) {
            const std::size_t pt = task / T;
            if (!failure[pt].empty()) continue;
            try {
                stats[task] = detail::run_trial(setups[pt], trial_seed(spec.master_seed, static_cast<int>(task % T)));
            } catch (const std::exception& e) {
                trial_error[task] = e.what();
            }
        }
    };
    const unsigned n_threads = std::min<unsigned>(detail::resolve_threads(spec.threads), static_cast<unsigned>(points * T));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<SweepRow> rows(points);
    for (std::size_t i = 0; i < points; ++i) {
        SweepRow& r = rows[i];
        r.axis1 = v1[i / v2.size()];
        r.axis2 = v2[i % v2.size()];
        if (failure[i].empty())
            for (std::size_t t = 0; t < T; ++t)
                if (!trial_error[i * T + t].empty()) {
                    failure[i] = trial_error[i * T + t];
                    break;
                }
        if (!failure[i].empty()) {
            r.status = "failed: " + failure[i];
            continue;
        }
        const auto& setup = setups[i];
        CompensatedSum d, d2, eff, pdr, ey, eb;
        for (std::size_t t = 0; t < T; ++t) {
            const auto& s = stats[i * T + t];
            d += s.delta_e;
            d2 += static_cast<long double>(s.delta_e) * s.delta_e;
            eff += s.efficiency;
            pdr += s.pdr;
            ey += s.e_y;
            eb += s.e_b;
            r.departures += s.departures;
            r.slots += s.slots;
        }
        const long double n = static_cast<long double>(T);
        const long double mean = d.value() / n;
        r.delta_e_empirical = static_cast<double>(mean);
        if (T >= 2) {
            const long double var = std::max(0.0L, (d2.value() - n * mean * mean) / (n - 1.0L));
            r.delta_e_ci95 = static_cast<double>(1.96L * std::sqrt(var / n));
        } else {
            r.delta_e_ci95 = 0.0;
        }
        r.efficiency = static_cast<double>(eff.value() / n);
        r.pdr = static_cast<double>(pdr.value() / n);
        r.p_ff_effective = setup.p_ff;
        if (setup.spec.model == SystemModel::lharq) {
            r.e_y = static_cast<double>(ey.value() / n);
            r.e_b = static_cast<double>(eb.value() / n);
            if (setup.iid_reducible) {
                const IidErrorModel m{setup.p_ff, setup.spec.p_bt, setup.spec.harq.max_rounds};
                r.delta_e_paper_literal = average_caoei(m, AoeiMode::paper_literal).delta_e;
                r.delta_e_corrected = average_caoei(m, AoeiMode::corrected).delta_e;
                r.delta_e_protocol = average_caoei(m, AoeiMode::protocol).delta_e;
            }
        }
    }
    return rows;
}

// Convenience sweeps over a single axis.
inline std::vector<SweepRow> sweep_axis(ExperimentSpec spec, Axis axis, std::vector<double> values) {
    spec.axis1 = {axis, std::move(values)};
    spec.axis2 = {};
    return run_experiment(spec);
}

inline std::vector<SweepRow> sweep_gamma_th(ExperimentSpec spec, std::vector<double> gamma_db) {
    return sweep_axis(std::move(spec), Axis::gamma_th_db, std::move(gamma_db));
}

inline std::vector<SweepRow> sweep_k(ExperimentSpec spec, std::vector<double> k) {
    return sweep_axis(std::move(spec), Axis::k, std::move(k));
}

inline std::vector<SweepRow> sweep_policy(ExperimentSpec spec, std::vector<double> phi, std::vector<double> beta) {
    spec.model = SystemModel::encoding;
    spec.axis1 = {Axis::phi_th, std::move(phi)};
    spec.axis2 = {Axis::beta, std::move(beta)};
    return run_experiment(spec);
}

inline std::vector<SweepRow> sweep_interference(ExperimentSpec spec, Axis axis, std::vector<double> values) {
    detail::require(axis == Axis::num_gbs || axis == Axis::pathloss_exponent || axis == Axis::power_imbalance,
                    "interference sweeps run over num_gbs, pathloss_exponent or power_imbalance");
    return sweep_axis(std::move(spec), axis, std::move(values));
}

// Event trace of trial 0 at the first grid point: slot events (L-HARQ) or
// sender actions (encoding), one JSON object per line, `limit` departures or
// slots long.
inline void write_trace(std::ostream& os, const ExperimentSpec& spec, std::int64_t limit) {
    spec.validate();
    detail::require(limit >= 1, "trace length must be >= 1");
    const double v1 = spec.axis1.values.empty() ? 0.0 : spec.axis1.values.front();
    const double v2 = spec.axis2.values.empty() ? 0.0 : spec.axis2.values.front();
    const auto p = detail::prepare_point(spec, v1, v2);
    const auto& s = p.spec;
    const std::uint64_t seed = trial_seed(s.master_seed, 0);
    if (s.model == SystemModel::encoding) {
        EncodingSimConfig ec;
        ec.policy = s.policy;
        ec.erasure_prob = p.p_ff;
        ec.arrival_prob = s.arrival_prob;
        ec.buffer_capacity = s.buffer_capacity;
        ec.slots = limit;
        ec.traditional = s.traditional;
        EncodingSimulator sim(ec, seed);
        sim.set_action_sink([&os](const ActionRecord& r) { write_action_line(os, r); });
        (void)sim.run();
        return;
    }
    auto drive = [&](auto model) {
        HarqEngine<decltype(model)> engine(s.harq, std::move(model), seed);
        engine.set_event_sink([&os](const SlotEvent& e) { write_event_line(os, e); });
        for (std::int64_t m = 0; m < limit; ++m) (void)engine.next_departure();
    };
    if (s.errors == ErrorSource::iid) {
        drive(IidErrors{s.p_ff, s.p_bt});
    } else {
        const auto mode = s.errors == ErrorSource::threshold ? DecodingMode::threshold : DecodingMode::finite_blocklength;
        drive(ChannelErrors(*p.sampler, mode, s.harq, s.backtrack, s.p_bt));
    }
}

inline const char* const sweep_columns[] = {
    "delta_e_empirical", "delta_e_ci95", "delta_e_paper_literal", "delta_e_corrected", "delta_e_protocol",
    "efficiency",        "pdr",          "e_y",                   "e_b",               "p_ff_effective",
    "departures",        "slots",        "status"};

inline void write_sweep_csv(std::ostream& os, const ExperimentSpec& spec, const std::vector<SweepRow>& rows) {
    const bool two = spec.axis2.axis != Axis::none;
    os << (spec.axis1.axis == Axis::none ? "point" : std::string(to_string(spec.axis1.axis)));
    if (two) os << ',' << to_string(spec.axis2.axis);
    for (const char* c : sweep_columns) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (spec.axis1.axis == Axis::none)
            os << i;
        else
            write_csv_number(os, r.axis1);
        if (two) {
            os << ',';
            write_csv_number(os, r.axis2);
        }
        for (double x : {r.delta_e_empirical, r.delta_e_ci95, r.delta_e_paper_literal, r.delta_e_corrected,
                         r.delta_e_protocol, r.efficiency, r.pdr, r.e_y, r.e_b, r.p_ff_effective}) {
            os << ',';
            write_csv_number(os, x);
        }
        os << ',' << r.departures << ',' << r.slots << ',';
        // Status text never contains commas or quotes in the CSV.
        std::string st = r.status;
        std::replace(st.begin(), st.end(), ',', ';');
        std::replace(st.begin(), st.end(), '"', '\'');
        os << st << '\n';
    }
}

inline nlohmann::ordered_json manifest(const ExperimentSpec& s) {
    using nlohmann::ordered_json;
    auto num = [](double x) -> ordered_json { return std::isfinite(x) ? ordered_json(x) : ordered_json(format_number(x)); };
    ordered_json j;
    j["toolkit"] = "lharq";
    j["version"] = LHARQ_VERSION;
    j["name"] = s.name;
    j["master_seed"] = s.master_seed;
    j["seed_rule"] = "trial t uses splitmix64-derived seed derive_seed(master_seed, t) at every grid point";
    j["model"] = std::string(to_string(s.model));
    j["errors"] = std::string(to_string(s.errors));
    j["backtrack"] = s.backtrack == BacktrackSource::constant ? "constant" : "fbl";
    j["trials"] = s.trials;
    j["departures_per_trial"] = s.departures_per_trial;
    j["bank_size"] = s.bank_size;
    j["channel"] = {{"b", s.fading.b}, {"m", s.fading.m}, {"omega", s.fading.omega}};
    j["link"] = {{"distance_m", s.link.distance_m}, {"carrier_freq_hz", s.link.carrier_hz},
                 {"sat_gain", s.link.sat_gain},     {"dest_gain", s.link.dest_gain},
                 {"sat_power_w", s.link.sat_power_w}, {"noise_w", s.link.noise_w}};
    j["interference"] = {{"num_gbs", s.interference.num_gbs},
                         {"distance_m", s.interference.base.distance_m},
                         {"spacing", s.interference.spacing},
                         {"power_w", s.interference.base.power_w},
                         {"gain", s.interference.base.gain},
                         {"pathloss_exponent", s.interference.base.pathloss_exponent},
                         {"reference_distance_m", s.interference.base.reference_distance_m},
                         {"power_imbalance", s.interference.imbalance}};
    j["harq"] = {{"max_rounds", s.harq.max_rounds},     {"mixing_rate", s.harq.rho},
                 {"blocklength", s.harq.fbc.blocklength}, {"coding_rate", s.harq.fbc.rate},
                 {"packet_bits", s.harq.fbc.packet_bits}, {"gamma_th_db", num(s.gamma_th_db)}};
    j["iid"] = {{"p_ff", s.p_ff}, {"p_bt", s.p_bt}};
    j["policy"] = {{"phi_th", s.policy.phi_th}, {"beta", s.policy.beta}, {"feedback_delay_slots", s.policy.feedback_delay}};
    j["encoding"] = {{"arrival_prob", s.arrival_prob}, {"buffer_capacity", s.buffer_capacity}, {"traditional", s.traditional}};
    auto axis = [&](const SweepAxis& a) {
        ordered_json v = ordered_json::array();
        for (double x : a.values) v.push_back(num(x));
        return ordered_json{{"axis", std::string(to_string(a.axis))}, {"values", v}};
    };
    j["sweep"] = {axis(s.axis1), axis(s.axis2)};
    return j;
}

}  // namespace lharq
