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

// lharq command-line front end.
//
// Exit codes: 0 success, 1 runtime or check failure, 2 usage or config error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "lharq/lharq.hpp"
#include "lharq/stats.hpp"
#include "lharq/validation.hpp"

namespace fs = std::filesystem;
using namespace lharq;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string csv_help() {
    std::string s = "CSV columns (results.csv): <axis1>[,<axis2>]";
    for (const char* c : sweep_columns) s += std::string(",") + c;
    s += "\nSensitivity CSV (sensitivity.csv): omega,beta,eps,d_omega,d_beta,regime";
    s += "\nFull schema: docs/csv_schema.md";
    return s;
}

std::vector<double> values_flag(const std::string& text, const std::string& flag) {
    try {
        return parse_value_list(text);
    } catch (const invalid_parameter& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

fs::path prepare_out_dir(const std::string& dir) {
    const fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
    return p;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    double p_ff = 0.5;
    double p_bt = 0.2;
    int k = 2;
    std::string mode = "corrected";
    bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const IidErrorModel m{a.p_ff, a.p_bt, a.k};
    m.validate();
    std::vector<AoeiMode> modes;
    if (a.mode == "both") {
        modes = {AoeiMode::paper_literal, AoeiMode::corrected};
    } else if (a.mode == "all") {
        modes = {AoeiMode::paper_literal, AoeiMode::corrected, AoeiMode::protocol};
    } else {
        const auto md = parse_mode(a.mode);
        if (!md || *md == AoeiMode::empirical) throw UsageError("--mode must be paper_literal, corrected, protocol, both or all");
        modes = {*md};
    }
    std::vector<AoeiReport> reports;
    for (auto md : modes) reports.push_back(average_caoei(m, md));

    double lo = reports.front().delta_e;
    double hi = lo;
    for (const auto& r : reports) {
        lo = std::min(lo, r.delta_e);
        hi = std::max(hi, r.delta_e);
    }
    const double spread = hi - lo;
    const bool disagree = reports.size() > 1 && spread > 1e-12 * std::max(1.0, std::fabs(hi));

    if (a.json) {
        nlohmann::ordered_json j;
        j["p_ff"] = a.p_ff;
        j["p_bt"] = a.p_bt;
        j["k"] = a.k;
        j["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) j["reports"].push_back(to_json(r));
        if (reports.size() > 1) {
            j["disagreement"] = disagree;
            j["delta_e_spread"] = spread;
        }
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "p_ff=" << format_number(a.p_ff) << " p_bt=" << format_number(a.p_bt) << " K=" << a.k << '\n';
    for (const auto& r : reports) {
        std::cout << std::left << std::setw(14) << to_string(r.mode) << " E{Y}=" << format_number(r.e_y)
                  << " E{Y^2}=" << format_number(r.e_y2) << " E{B}=" << format_number(r.e_b)
                  << " Delta=" << format_number(r.delta_e) << '\n';
    }
    if (reports.size() > 1) {
        if (disagree)
            std::cout << "DISAGREEMENT: modes differ by " << format_number(spread) << " in Delta\n";
        else
            std::cout << "modes agree\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------- simulate / sweep

struct RunArgs {
    std::string config;
    std::string out = "lharq_out";
    unsigned threads = 0;
    std::int64_t trace = 0;
    std::int64_t departures = 0;
    int trials = 0;
    std::int64_t seed = -1;
    // sweep overrides
    std::string axis, values, axis2, values2;
};

ExperimentSpec load_spec(const RunArgs& a) {
    ExperimentSpec s = a.config.empty() ? ExperimentSpec{} : experiment_from_config(ConfigFile::load(a.config));
    if (a.threads > 0) s.threads = a.threads;
    if (a.departures > 0) s.departures_per_trial = a.departures;
    if (a.trials > 0) s.trials = a.trials;
    if (a.seed >= 0) s.master_seed = static_cast<std::uint64_t>(a.seed);
    auto axis = [&](const std::string& name, const std::string& vals, SweepAxis& out, const char* flag) {
        if (name.empty()) return;
        const auto ax = parse_axis(name);
        if (!ax) throw UsageError(std::string(flag) + ": unknown sweep axis '" + name + "'");
        out.axis = *ax;
        if (*ax != Axis::none) {
            if (vals.empty()) throw UsageError(std::string(flag) + " needs a value list");
            out.values = values_flag(vals, flag);
        }
    };
    axis(a.axis, a.values, s.axis1, "--axis");
    axis(a.axis2, a.values2, s.axis2, "--axis2");
    s.validate();
    return s;
}

int run_and_write(const ExperimentSpec& spec, const RunArgs& a) {
    const auto rows = run_experiment(spec);
    const fs::path dir = prepare_out_dir(a.out);
    std::ostringstream csv;
    write_sweep_csv(csv, spec, rows);
    write_file(dir / "results.csv", csv.str());
    auto man = manifest(spec);
    man["outputs"] = {"results.csv"};
    if (a.trace > 0) {
        std::ostringstream tr;
        write_trace(tr, spec, a.trace);
        write_file(dir / "trace.jsonl", tr.str());
        man["outputs"].push_back("trace.jsonl");
        man["trace_departures"] = a.trace;
    }
    write_file(dir / "manifest.json", man.dump(2) + "\n");

    int failed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].ok()) continue;
        ++failed;
        std::cerr << "grid point " << i;
        if (spec.axis1.axis != Axis::none) {
            std::cerr << " (" << to_string(spec.axis1.axis) << "=" << format_number(rows[i].axis1);
            if (spec.axis2.axis != Axis::none)
                std::cerr << ", " << to_string(spec.axis2.axis) << "=" << format_number(rows[i].axis2);
            std::cerr << ")";
        }
        std::cerr << ": " << rows[i].status << '\n';
    }
    std::cout << "wrote " << rows.size() << " row(s) to " << (dir / "results.csv").string() << '\n';
    if (failed > 0) {
        std::cerr << failed << " of " << rows.size() << " grid point(s) failed\n";
        return exit_failure;
    }
    return exit_ok;
}

struct SensitivityArgs {
    bool enabled = false;
    std::string omega = "0.1,0.5,1,2,5";
    std::string beta = "0.05,0.1,0.2,0.5";
    int index = 40;
    double packets = 200;
    double p_ff = 0.5;
    int k = 2;
    std::string mode = "corrected";
};

int cmd_sensitivity(const SensitivityArgs& a, const std::string& out) {
    const auto mode = parse_mode(a.mode);
    if (!mode || *mode == AoeiMode::empirical) throw UsageError("--mode must be paper_literal, corrected or protocol");
    const auto omegas = values_flag(a.omega, "--omega");
    const auto betas = values_flag(a.beta, "--beta");
    const IidErrorModel base{a.p_ff, 0.0, a.k};
    base.validate();
    std::ostringstream csv;
    write_sensitivity_header(csv);
    int outside = 0;
    for (double w : omegas) {
        for (double b : betas) {
            const WeightContext ctx{w, b, a.index, a.packets};
            ctx.validate();
            const auto row = sensitivity_row(ctx, base, *mode);
            write_sensitivity_row(csv, row);
            if (row.out_of_model) ++outside;
        }
    }
    const fs::path dir = prepare_out_dir(out);
    write_file(dir / "sensitivity.csv", csv.str());
    nlohmann::ordered_json man;
    man["toolkit"] = "lharq";
    man["version"] = LHARQ_VERSION;
    man["kind"] = "sensitivity";
    man["mode"] = std::string(to_string(*mode));
    man["p_ff"] = a.p_ff;
    man["k"] = a.k;
    man["packet_index"] = a.index;
    man["packets"] = a.packets;
    man["omega"] = omegas;
    man["beta"] = betas;
    man["outputs"] = {"sensitivity.csv"};
    write_file(dir / "manifest.json", man.dump(2) + "\n");
    std::cout << "wrote " << omegas.size() * betas.size() << " row(s) to " << (dir / "sensitivity.csv").string();
    if (outside > 0) std::cout << " (" << outside << " with eps outside [0, 1], derivatives left blank)";
    std::cout << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
    bool quick = false;
    std::vector<std::string> only;
    std::uint64_t seed = validation::Options{}.seed;
};

int cmd_validate(const ValidateArgs& a) {
    validation::Options o;
    o.quick = a.quick;
    o.only = a.only;
    o.seed = a.seed;
    const auto rs = validation::run_all(o, [](const validation::CheckResult& r) {
        std::cout << validation::format_line(r) << std::endl;
    });
    if (rs.empty()) throw UsageError("--only selected no checks");
    bool ok = true;
    for (const auto& r : rs) {
        if (r.informational || r.passed) continue;
        ok = false;
        std::cerr << "failed check " << r.id << ": " << r.name << '\n';
    }
    return ok ? exit_ok : exit_failure;
}

// ---------------------------------------------------------------- pdf-check

struct PdfArgs {
    std::string preset;
    double b = std::nan("");
    double m = std::nan("");
    double omega = std::nan("");
    std::size_t draws = 1000000;
    std::uint64_t seed = 1;
    int cells = 50;
};

// Rician power density with scatter power 2b and LoS power omega.
double rician_pdf(double x, double b, double omega) {
    const double z = std::sqrt(omega * x) / b;
    const double log_i0 = z < 700.0 ? std::log(boost::math::cyl_bessel_i(0, z))
                                    : z - 0.5 * std::log(2.0 * std::numbers::pi * z);
    return std::exp(log_i0 - (x + omega) / (2.0 * b)) / (2.0 * b);
}

int cmd_pdf_check(const PdfArgs& a) {
    ShadowedRicianParams p{};
    if (!a.preset.empty()) {
        const auto pr = find_fading_preset(a.preset);
        if (!pr) throw UsageError("unknown preset '" + a.preset + "' (heavy, average, light)");
        p = *pr;
    }
    if (!std::isnan(a.b)) p.b = a.b;
    if (!std::isnan(a.m)) p.m = a.m;
    if (!std::isnan(a.omega)) p.omega = a.omega;
    p.validate();
    if (a.draws < 100) throw UsageError("--draws must be >= 100");
    if (a.cells < 2) throw UsageError("--cells must be >= 2");

    const double norm = stats::pdf_moment(p, 0);
    const double mean = stats::pdf_moment(p, 1);
    CounterRng rng(derive_seed(a.seed, 0xF1D0));
    const auto gof = stats::sampler_gof(p, a.draws, a.cells, rng);

    const bool norm_ok = std::fabs(norm - 1.0) <= 1e-6;
    const bool mean_ok = std::fabs(mean - p.mean_power()) <= 1e-5 * std::max(1.0, p.mean_power());
    const bool gof_ok = gof.p_value > 0.01;
    std::cout << "params b=" << format_number(p.b) << " m=" << format_number(p.m) << " omega=" << format_number(p.omega)
              << '\n';
    std::cout << "normalization " << format_number(norm) << " (|err| " << format_number(std::fabs(norm - 1.0))
              << (norm_ok ? ", ok" : ", FAIL") << ")\n";
    std::cout << "mean power " << format_number(mean) << " vs 2b+omega " << format_number(p.mean_power())
              << (mean_ok ? " (ok)" : " (FAIL)") << '\n';
    std::cout << "sampler chi-square stat " << format_number(gof.statistic) << " dof " << gof.dof << " p "
              << format_number(gof.p_value) << (gof_ok ? " (ok)" : " (FAIL)") << '\n';

    if (p.omega == 0.0 || p.m == 0.0) {
        // No LoS: the gain is exponential with mean 2b.
        const double mu = 2.0 * p.b;
        CounterRng krng(derive_seed(a.seed, 0xE1F0));
        const std::size_t n = std::min<std::size_t>(a.draws, 100000);
        std::vector<double> xs(n);
        for (auto& x : xs) x = sample_channel_gain(p, krng);
        const auto ks = stats::ks_test(xs, [mu](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / mu); });
        std::cout << "exponential special case (mean " << format_number(mu) << "): KS D " << format_number(ks.statistic)
                  << " p " << format_number(ks.p_value) << " over " << n << " draws\n";
    }
    if (p.m >= 100.0 && p.omega > 0.0) {
        // Shadowing vanishes as m grows; report the distance to the Rician law.
        double worst = 0.0;
        const double hi = p.mean_power() * 6.0;
        for (int i = 1; i <= 400; ++i) {
            const double x = hi * i / 400.0;
            worst = std::max(worst, std::fabs(shadowed_rician_pdf(x, p) - rician_pdf(x, p.b, p.omega)));
        }
        std::cout << "note: m=" << format_number(p.m) << " is large; max |f - f_Rician| on (0, "
                  << format_number(hi) << "] = " << format_number(worst) << " (informational)\n";
    }
    return norm_ok && mean_ok && gof_ok ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lharq: truncated L-HARQ status-update simulator and age analytics"};
    app.set_version_flag("--version", std::string(LHARQ_VERSION));
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 1 runtime or check failure, 2 usage or config error.\n"
               "Environment: LHARQ_THREADS sets the default worker count.");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "closed-form average C-AoEI under i.i.d. errors");
    analyze->add_option("--pff", an.p_ff, "feedforward round error probability")->required();
    analyze->add_option("--pbt", an.p_bt, "backtracking failure probability")->required();
    analyze->add_option("--k", an.k, "maximum rounds per circle")->default_val(2);
    analyze->add_option("--mode", an.mode, "paper_literal | corrected | protocol | both | all")->default_val("corrected");
    analyze->add_flag("--json", an.json, "print JSON instead of text");

    RunArgs sim;
    auto* simulate = app.add_subcommand("simulate", "run one experiment from a config file");
    simulate->add_option("config", sim.config, "experiment config file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", sim.out, "output directory")->default_val("lharq_out");
    simulate->add_option("--threads", sim.threads, "worker thread cap (0: LHARQ_THREADS or all cores)");
    simulate->add_option("--departures", sim.departures, "override departures (slots) per trial");
    simulate->add_option("--trials", sim.trials, "override trial count");
    simulate->add_option("--seed", sim.seed, "override master seed");
    simulate->add_option("--trace", sim.trace, "also write trace.jsonl for this many departures of trial 0");
    simulate->footer(csv_help());

    RunArgs sw;
    SensitivityArgs sens;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep (config plus axis overrides) or sensitivity grid");
    sweep->add_option("config", sw.config, "experiment config file (optional)")->check(CLI::ExistingFile);
    sweep->add_option("--axis", sw.axis, "sweep axis, e.g. snr_db, gamma_th_db, k, phi_th, beta, num_gbs");
    sweep->add_option("--values", sw.values, "comma list or start:step:stop");
    sweep->add_option("--axis2", sw.axis2, "second axis");
    sweep->add_option("--values2", sw.values2, "values of the second axis");
    sweep->add_option("--out", sw.out, "output directory")->default_val("lharq_out");
    sweep->add_option("--threads", sw.threads, "worker thread cap (0: LHARQ_THREADS or all cores)");
    sweep->add_option("--departures", sw.departures, "override departures (slots) per trial");
    sweep->add_option("--trials", sw.trials, "override trial count");
    sweep->add_option("--seed", sw.seed, "override master seed");
    sweep->add_flag("--sensitivity", sens.enabled, "write the weight-sensitivity grid instead of simulating");
    sweep->add_option("--omega", sens.omega, "sensitivity: omega values")->default_val(sens.omega);
    sweep->add_option("--beta", sens.beta, "sensitivity: beta values")->default_val(sens.beta);
    sweep->add_option("--index", sens.index, "sensitivity: packet index i")->default_val(sens.index);
    sweep->add_option("--packets", sens.packets, "sensitivity: packet count S")->default_val(sens.packets);
    sweep->add_option("--pff", sens.p_ff, "sensitivity: feedforward error probability")->default_val(sens.p_ff);
    sweep->add_option("--k", sens.k, "sensitivity: maximum rounds")->default_val(sens.k);
    sweep->add_option("--mode", sens.mode, "sensitivity: analytic mode")->default_val(sens.mode);
    sweep->footer(csv_help());

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "run the acceptance checks");
    validate->add_flag("--quick", va.quick, "100x fewer Monte Carlo draws, 5% tolerances");
    validate->add_option("--only", va.only, "run only these check ids (1..10), space or comma separated")->delimiter(',');
    validate->add_option("--seed", va.seed, "base seed")->default_val(va.seed);

    PdfArgs pa;
    auto* pdf = app.add_subcommand("pdf-check", "shadowed-Rician density and sampler check");
    pdf->add_option("--preset", pa.preset, "heavy | average | light (default average)");
    pdf->add_option("--b", pa.b, "half the average scatter power");
    pdf->add_option("--m", pa.m, "Nakagami-m shadowing parameter");
    pdf->add_option("--omega", pa.omega, "average LoS power");
    pdf->add_option("--draws", pa.draws, "sampler draws")->default_val(pa.draws);
    pdf->add_option("--cells", pa.cells, "chi-square cells")->default_val(pa.cells);
    pdf->add_option("--seed", pa.seed, "sampler seed")->default_val(pa.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return exit_usage;
    }

    try {
        if (*analyze) return cmd_analyze(an);
        if (*simulate) return run_and_write(load_spec(sim), sim);
        if (*sweep) {
            if (sens.enabled) return cmd_sensitivity(sens, sw.out);
            const auto spec = load_spec(sw);
            if (spec.axis1.axis == Axis::none) throw UsageError("sweep needs --axis (or sweep.axis in the config)");
            return run_and_write(spec, sw);
        }
        if (*validate) return cmd_validate(va);
        if (*pdf) return cmd_pdf_check(pa);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const invalid_parameter& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return exit_usage;
    } catch (const divergent_model& e) {
        std::cerr << "divergent model: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}
