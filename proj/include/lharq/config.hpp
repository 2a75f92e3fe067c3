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

// Sectioned key = value experiment files.
//
//   # comment
//   [harq]
//   max_rounds = 2
//   gamma_th_db = 3
//
// Unknown sections or keys are rejected. Physical quantities carry their unit
// in the key name; dB-valued keys are converted to linear on load.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lharq/errors.hpp"
#include "lharq/experiment.hpp"

namespace lharq {

class config_error : public invalid_parameter {
public:
    config_error(std::string source, int line, int column, const std::string& what)
        : invalid_parameter(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {

struct ConfigEntry {
    std::string value;
    int line = 0;
    int key_column = 0;
    int value_column = 0;
};

inline constexpr std::pair<std::string_view, std::string_view> config_schema[] = {
    {"experiment", "name"},         {"experiment", "model"},          {"experiment", "trials"},
    {"experiment", "departures_per_trial"}, {"experiment", "master_seed"}, {"experiment", "bank_size"},
    {"experiment", "threads"},
    {"channel", "preset"},          {"channel", "b"},                 {"channel", "m"},
    {"channel", "omega"},           {"channel", "errors"},            {"channel", "backtrack"},
    {"channel", "p_ff"},            {"channel", "p_bt"},
    {"link", "distance_m"},         {"link", "carrier_freq_hz"},      {"link", "sat_gain_dbi"},
    {"link", "dest_gain_dbi"},      {"link", "sat_power_dbm"},        {"link", "mean_snr_db"},
    {"link", "noise_dbm"},
    {"interference", "num_gbs"},    {"interference", "distance_m"},   {"interference", "spacing"},
    {"interference", "power_dbm"},  {"interference", "gain_dbi"},     {"interference", "pathloss_exponent"},
    {"interference", "reference_distance_m"}, {"interference", "power_imbalance"},
    {"harq", "max_rounds"},         {"harq", "mixing_rate"},          {"harq", "blocklength"},
    {"harq", "coding_rate"},        {"harq", "packet_bits"},          {"harq", "gamma_th_db"},
    {"policy", "phi_th"},           {"policy", "beta"},               {"policy", "feedback_delay_slots"},
    {"encoding", "arrival_prob"},   {"encoding", "buffer_capacity"},  {"encoding", "traditional"},
    {"sweep", "axis"},              {"sweep", "values"},              {"sweep", "axis2"},
    {"sweep", "values2"},
};

inline bool known_section(std::string_view s) {
    for (const auto& [sec, key] : config_schema)
        if (sec == s) return true;
    return false;
}

inline bool known_key(std::string_view s, std::string_view k) {
    for (const auto& [sec, key] : config_schema)
        if (sec == s && key == k) return true;
    return false;
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Accepts decimal numbers plus the literals inf and -inf.
inline std::optional<double> parse_number_text(const std::string& s) {
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Comma-separated numbers, or start:step:stop (inclusive).
inline std::vector<double> parse_value_list(const std::string& v) {
    auto num = [](const std::string& tok) {
        const auto x = parse_number_text(std::string(detail::trim(tok)));
        if (!x) throw invalid_parameter("expected a number, got '" + tok + "'");
        return *x;
    };
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(v);
        for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(num(tok));
        if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
            throw invalid_parameter("range must be start:step:stop with step > 0 and stop >= start");
        const auto n = static_cast<long long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
        for (long long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
    } else {
        std::stringstream ss(v);
        for (std::string tok; std::getline(ss, tok, ',');) out.push_back(num(tok));
    }
    if (out.empty()) throw invalid_parameter("empty value list");
    return out;
}

class ConfigFile {
public:
    static ConfigFile parse(std::istream& in, std::string source = "<config>") {
        ConfigFile cfg;
        cfg.source_ = std::move(source);
        std::string raw;
        std::string section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string_view::npos) continue;
            const int col = static_cast<int>(first) + 1;
            const std::string_view body = detail::trim(line);
            if (body.front() == '[') {
                if (body.back() != ']') cfg.fail(line_no, col, "unterminated section header");
                section = std::string(detail::trim(body.substr(1, body.size() - 2)));
                if (!detail::known_section(section)) cfg.fail(line_no, col, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) cfg.fail(line_no, col, "expected key = value");
            if (section.empty()) cfg.fail(line_no, col, "key outside of any section");
            const std::string key(detail::trim(line.substr(0, eq)));
            if (!detail::known_key(section, key)) cfg.fail(line_no, col, "unknown key '" + key + "' in [" + section + "]");
            const std::string_view rest = line.substr(eq + 1);
            const auto vfirst = rest.find_first_not_of(" \t\r");
            const int vcol = static_cast<int>(eq + 1 + (vfirst == std::string_view::npos ? 0 : vfirst)) + 1;
            auto& sec = cfg.entries_[section];
            if (sec.count(key)) cfg.fail(line_no, col, "duplicate key '" + key + "' in [" + section + "]");
            sec[key] = {std::string(detail::trim(rest)), line_no, col, vcol};
        }
        return cfg;
    }

    static ConfigFile load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error(path, 0, 0, "cannot open config file");
        return parse(in, path);
    }

    const detail::ConfigEntry* find(const std::string& section, const std::string& key) const {
        const auto s = entries_.find(section);
        if (s == entries_.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }

    [[noreturn]] void fail(int line, int col, const std::string& what) const {
        throw config_error(source_, line, col, what);
    }
    [[noreturn]] void fail(const detail::ConfigEntry& e, const std::string& what) const {
        throw config_error(source_, e.line, e.value_column, what);
    }

    double number(const detail::ConfigEntry& e) const { return parse_number(e, e.value); }

    std::optional<double> number(const std::string& section, const std::string& key) const {
        const auto* e = find(section, key);
        if (!e) return std::nullopt;
        return number(*e);
    }

    std::optional<long long> integer(const std::string& section, const std::string& key) const {
        const auto* e = find(section, key);
        if (!e) return std::nullopt;
        char* end = nullptr;
        errno = 0;
        const long long v = std::strtoll(e->value.c_str(), &end, 10);
        if (e->value.empty() || *end != '\0' || errno == ERANGE) fail(*e, "expected an integer, got '" + e->value + "'");
        return v;
    }

    std::optional<std::string> text(const std::string& section, const std::string& key) const {
        const auto* e = find(section, key);
        if (!e) return std::nullopt;
        return e->value;
    }

    std::optional<bool> boolean(const std::string& section, const std::string& key) const {
        const auto* e = find(section, key);
        if (!e) return std::nullopt;
        if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
        if (e->value == "false" || e->value == "0" || e->value == "no") return false;
        fail(*e, "expected true or false, got '" + e->value + "'");
    }

    std::optional<std::vector<double>> list(const std::string& section, const std::string& key) const {
        const auto* e = find(section, key);
        if (!e) return std::nullopt;
        try {
            return parse_value_list(e->value);
        } catch (const invalid_parameter& err) {
            fail(*e, err.what());
        }
    }

    const std::string& source() const noexcept { return source_; }

private:
    double parse_number(const detail::ConfigEntry& e, const std::string& s) const {
        const auto v = parse_number_text(s);
        if (!v) fail(e, "expected a number, got '" + s + "'");
        return *v;
    }

    std::string source_;
    std::map<std::string, std::map<std::string, detail::ConfigEntry>> entries_;
};

// Builds an experiment from a parsed file. Presets are applied before the
// explicit fading keys regardless of their order in the file.
inline ExperimentSpec experiment_from_config(const ConfigFile& c) {
    ExperimentSpec s;
    if (auto v = c.text("experiment", "name")) s.name = *v;
    if (auto v = c.text("experiment", "model")) {
        if (*v == "lharq") s.model = SystemModel::lharq;
        else if (*v == "encoding") s.model = SystemModel::encoding;
        else c.fail(*c.find("experiment", "model"), "model must be lharq or encoding");
    }
    auto positive_int = [&](const char* sec, const char* key, long long lo) -> std::optional<long long> {
        auto v = c.integer(sec, key);
        if (v && *v < lo) c.fail(*c.find(sec, key), std::string(key) + " must be >= " + std::to_string(lo));
        return v;
    };
    if (auto v = positive_int("experiment", "trials", 1)) s.trials = static_cast<int>(*v);
    if (auto v = positive_int("experiment", "departures_per_trial", 2)) s.departures_per_trial = *v;
    if (auto v = positive_int("experiment", "master_seed", 0)) s.master_seed = static_cast<std::uint64_t>(*v);
    if (auto v = positive_int("experiment", "bank_size", 1)) s.bank_size = static_cast<std::size_t>(*v);
    if (auto v = positive_int("experiment", "threads", 0)) s.threads = static_cast<unsigned>(*v);

    if (auto v = c.text("channel", "preset")) {
        const auto p = find_fading_preset(*v);
        if (!p) c.fail(*c.find("channel", "preset"), "unknown preset '" + *v + "' (heavy, average, light)");
        s.fading = *p;
    }
    if (auto v = c.number("channel", "b")) s.fading.b = *v;
    if (auto v = c.number("channel", "m")) s.fading.m = *v;
    if (auto v = c.number("channel", "omega")) s.fading.omega = *v;
    if (auto v = c.text("channel", "errors")) {
        if (*v == "iid") s.errors = ErrorSource::iid;
        else if (*v == "threshold") s.errors = ErrorSource::threshold;
        else if (*v == "fbl") s.errors = ErrorSource::finite_blocklength;
        else c.fail(*c.find("channel", "errors"), "errors must be iid, threshold or fbl");
    }
    if (auto v = c.text("channel", "backtrack")) {
        if (*v == "constant") s.backtrack = BacktrackSource::constant;
        else if (*v == "fbl") s.backtrack = BacktrackSource::finite_blocklength;
        else c.fail(*c.find("channel", "backtrack"), "backtrack must be constant or fbl");
    }
    if (auto v = c.number("channel", "p_ff")) s.p_ff = *v;
    if (auto v = c.number("channel", "p_bt")) s.p_bt = *v;

    if (auto v = c.number("link", "distance_m")) s.link.distance_m = *v;
    if (auto v = c.number("link", "carrier_freq_hz")) s.link.carrier_hz = *v;
    if (auto v = c.number("link", "sat_gain_dbi")) s.link.sat_gain = db_to_linear(*v);
    if (auto v = c.number("link", "dest_gain_dbi")) s.link.dest_gain = db_to_linear(*v);
    if (auto v = c.number("link", "sat_power_dbm")) s.link.sat_power_w = dbm_to_watts(*v);
    if (auto v = c.number("link", "noise_dbm")) s.link.noise_w = dbm_to_watts(*v);

    if (auto v = positive_int("interference", "num_gbs", 0)) s.interference.num_gbs = static_cast<int>(*v);
    if (auto v = c.number("interference", "distance_m")) s.interference.base.distance_m = *v;
    if (auto v = c.number("interference", "spacing")) s.interference.spacing = *v;
    if (auto v = c.number("interference", "power_dbm")) s.interference.base.power_w = dbm_to_watts(*v);
    if (auto v = c.number("interference", "gain_dbi")) s.interference.base.gain = db_to_linear(*v);
    if (auto v = c.number("interference", "pathloss_exponent")) s.interference.base.pathloss_exponent = *v;
    if (auto v = c.number("interference", "reference_distance_m")) s.interference.base.reference_distance_m = *v;
    if (auto v = c.number("interference", "power_imbalance")) s.interference.imbalance = *v;

    if (auto v = positive_int("harq", "max_rounds", 1)) s.harq.max_rounds = static_cast<int>(*v);
    if (auto v = c.number("harq", "mixing_rate")) s.harq.rho = *v;
    if (auto v = positive_int("harq", "blocklength", 1)) s.harq.fbc.blocklength = static_cast<int>(*v);
    if (auto v = c.number("harq", "coding_rate")) s.harq.fbc.rate = *v;
    if (auto v = positive_int("harq", "packet_bits", 1)) s.harq.fbc.packet_bits = static_cast<int>(*v);
    if (auto v = c.number("harq", "gamma_th_db")) s.gamma_th_db = *v;

    if (auto v = c.number("policy", "phi_th")) s.policy.phi_th = *v;
    if (auto v = c.number("policy", "beta")) s.policy.beta = *v;
    if (auto v = positive_int("policy", "feedback_delay_slots", 0)) s.policy.feedback_delay = static_cast<int>(*v);

    if (auto v = c.number("encoding", "arrival_prob")) s.arrival_prob = *v;
    if (auto v = positive_int("encoding", "buffer_capacity", 1)) s.buffer_capacity = static_cast<std::size_t>(*v);
    if (auto v = c.boolean("encoding", "traditional")) s.traditional = *v;

    auto read_axis = [&](const char* axis_key, const char* values_key, SweepAxis& out) {
        const auto name = c.text("sweep", axis_key);
        const auto values = c.list("sweep", values_key);
        if (!name && !values) return;
        if (!name) c.fail(*c.find("sweep", values_key), std::string(values_key) + " given without " + axis_key);
        const auto ax = parse_axis(*name);
        if (!ax) c.fail(*c.find("sweep", axis_key), "unknown sweep axis '" + *name + "'");
        if (*ax != Axis::none && !values) c.fail(*c.find("sweep", axis_key), std::string(axis_key) + " needs " + values_key);
        out.axis = *ax;
        if (values) out.values = *values;
    };
    read_axis("axis", "values", s.axis1);
    read_axis("axis2", "values2", s.axis2);

    // Mean SNR is resolved last because it depends on fading and geometry.
    if (auto v = c.number("link", "mean_snr_db")) {
        if (c.find("link", "sat_power_dbm")) c.fail(*c.find("link", "mean_snr_db"), "give either sat_power_dbm or mean_snr_db, not both");
        set_mean_snr_db(s, *v);
    }

    // Errors are reported at the first key of the group present in the file.
    auto check = [&](const char* sec, std::initializer_list<const char*> keys, auto&& fn) {
        try {
            fn();
        } catch (const invalid_parameter& e) {
            for (const char* key : keys)
                if (const auto* entry = c.find(sec, key)) c.fail(*entry, e.what());
            throw;
        }
    };
    check("channel", {"b", "m", "omega", "preset"}, [&] { s.fading.validate(); });
    check("link", {"distance_m", "carrier_freq_hz", "sat_gain_dbi", "dest_gain_dbi", "sat_power_dbm", "noise_dbm"},
          [&] { s.link.validate(); });
    check("interference",
          {"power_imbalance", "spacing", "num_gbs", "distance_m", "power_dbm", "gain_dbi", "pathloss_exponent",
           "reference_distance_m"},
          [&] { s.interference.validate(); });
    check("harq", {"mixing_rate", "coding_rate", "max_rounds", "gamma_th_db"}, [&] {
        HarqConfig h = s.harq;
        h.gamma_th = gamma_th_linear(s);
        h.validate();
    });
    check("policy", {"phi_th", "beta", "feedback_delay_slots"}, [&] { s.policy.validate(); });
    s.validate();
    return s;
}

}  // namespace lharq
