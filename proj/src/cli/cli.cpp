// Copyright 2026 The ifmsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "ifmsearch/analysis.hpp"
#include "ifmsearch/baselines.hpp"
#include "ifmsearch/circuit_sim.hpp"
#include "ifmsearch/cli.hpp"
#include "ifmsearch/closed_form.hpp"

#ifndef IFMSEARCH_VERSION
#define IFMSEARCH_VERSION "0.0.0"
#endif

namespace ifmsearch::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct CliConfig {
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> m_values;
    std::optional<std::size_t> k;
    std::optional<double> theta;
    std::optional<std::string> theta_mode;
    std::size_t target = 0;
    std::string format = "csv";
    std::string output_path;
    std::optional<std::uint64_t> trials;
    std::uint64_t seed = 0;
    std::optional<std::size_t> k_max;
    std::optional<std::size_t> queries;
    bool search = false;
    bool closed_form = false;
};

double num(double v) { return round_to_printed(v); }

unsigned thread_budget() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QSEARCH_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1) {
            threads = static_cast<unsigned>(value);
        }
    }
    return threads;
}

Format format_of(const CliConfig& cfg) { return cfg.format == "json" ? Format::Json : Format::Csv; }

std::size_t single(const std::vector<std::size_t>& values, const char* flag) {
    if (values.size() != 1) {
        throw UsageError(std::string(flag) + " takes exactly one value for this command");
    }
    return values.front();
}

std::size_t require(const std::optional<std::size_t>& value, const char* flag) {
    if (!value) {
        throw UsageError(std::string(flag) + " is required");
    }
    return *value;
}

double theta_for(const CliConfig& cfg, std::size_t m) {
    if (cfg.theta) {
        if (!(*cfg.theta > 0.0 && *cfg.theta <= std::acos(-1.0))) {
            throw UsageError("--theta must lie in (0, pi]");
        }
        return *cfg.theta;
    }
    ThetaMode mode = ThetaMode::PiOverM;
    if (cfg.theta_mode) {
        try {
            mode = parse_theta_mode(*cfg.theta_mode);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--theta-mode: ") + e.what());
        }
    }
    return resolve_theta(mode, m);
}

SearchParams params_from(const CliConfig& cfg) {
    const std::size_t n = single(cfg.n_values, "--n");
    const std::size_t m = single(cfg.m_values, "--m");
    const std::size_t k = require(cfg.k, "--k");
    if (n < 2) throw UsageError("--n must be >= 2");
    if (m < 1) throw UsageError("--m must be >= 1");
    if (cfg.target >= n) throw UsageError("--target must be < --n");
    return SearchParams::make(n, m, theta_for(cfg, m), k, cfg.target);
}

void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open output file '" + cfg.output_path + "'");
    }
    file << text;
    file.flush();
    if (!file) {
        throw OutputError("failed writing output file '" + cfg.output_path + "'");
    }
}

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string line;
    bool first = true;
    for (const std::string& c : cells) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    line += '\n';
    return line;
}

std::string fmt(double v) { return format_number(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

// ---------------------------------------------------------------- run

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const SearchParams p = params_from(cfg);
    const SearchTrace trace = run_search(p);

    bool cf_available = is_pi_over_m(p.small_cycles, p.theta) && p.target < p.n_boxes;
    std::string cf_reason;
    if (cf_available) {
        try {
            (void)closed_form::leak_factor(p.small_cycles, p.theta);
        } catch (const DegenerateLeak& e) {
            cf_available = false;
            cf_reason = e.what();
        }
    } else {
        cf_reason = "closed form requires theta = pi/M";
    }
    if (cfg.closed_form && !cf_available) {
        err << "error: " << cf_reason << '\n';
        return kRuntimeError;
    }

    struct Row {
        std::size_t k;
        double tau, alpha, cycle_survival, survival, success;
        std::optional<double> cf_tau, cf_survival, cf_success;
    };
    std::vector<Row> rows;
    for (std::size_t k = 0; k <= p.large_cycles; ++k) {
        Row r{k,
              trace.tau(k),
              trace.alpha(k),
              k == 0 ? 1.0 : trace.records[k - 1].cycle_survival,
              trace.survival(k),
              trace.success(k),
              {},
              {},
              {}};
        if (cf_available) {
            const auto amp = closed_form::amplitudes(p.n_boxes, p.small_cycles, p.theta, k);
            const auto surv = closed_form::survival(p.n_boxes, p.small_cycles, p.theta, k);
            r.cf_tau = amp.tau;
            r.cf_survival = surv.cumulative;
            r.cf_success = surv.cumulative * amp.tau * amp.tau;
        }
        rows.push_back(r);
    }

    std::string text;
    if (format_of(cfg) == Format::Json) {
        json doc;
        doc["command"] = "run";
        doc["n"] = p.n_boxes;
        doc["m"] = p.small_cycles;
        doc["k"] = p.large_cycles;
        doc["theta"] = num(p.theta);
        doc["target"] = p.target;
        doc["queries"] = baselines::query_count(p.large_cycles, p.small_cycles);
        doc["closed_form_available"] = cf_available;
        doc["tau"] = num(rows.back().tau);
        doc["survival"] = num(rows.back().survival);
        doc["success"] = num(rows.back().success);
        json records = json::array();
        for (const Row& r : rows) {
            json rec{{"k", r.k},
                     {"tau", num(r.tau)},
                     {"alpha", num(r.alpha)},
                     {"cycle_survival", num(r.cycle_survival)},
                     {"survival", num(r.survival)},
                     {"success", num(r.success)}};
            rec["cf_tau"] = r.cf_tau ? json(num(*r.cf_tau)) : json(nullptr);
            rec["cf_survival"] = r.cf_survival ? json(num(*r.cf_survival)) : json(nullptr);
            rec["cf_success"] = r.cf_success ? json(num(*r.cf_success)) : json(nullptr);
            records.push_back(rec);
        }
        doc["records"] = records;
        text = doc.dump(2) + "\n";
    } else {
        text = csv_line({"k", "tau", "alpha", "cycle_survival", "survival", "success", "cf_tau",
                         "cf_survival", "cf_success"});
        auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("NA"); };
        for (const Row& r : rows) {
            text += csv_line({fmt(r.k), fmt(r.tau), fmt(r.alpha), fmt(r.cycle_survival),
                              fmt(r.survival), fmt(r.success), opt(r.cf_tau), opt(r.cf_survival),
                              opt(r.cf_success)});
        }
    }
    if (!cf_available) {
        err << "note: closed-form columns unavailable (" << cf_reason << ")\n";
    }
    emit(cfg, text, out);
    return kSuccess;
}

// ---------------------------------------------------------------- mc

int cmd_mc(const CliConfig& cfg, std::ostream& out, std::ostream&) {
    if (!cfg.trials || *cfg.trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
    const SearchParams p = params_from(cfg);
    const std::uint64_t trials = *cfg.trials;
    const OutcomeDistribution dist = monte_carlo(p, trials, cfg.seed, thread_budget());
    const OutcomeProbabilities expect = outcome_probabilities(p);

    struct Row {
        std::string outcome;
        std::string large, small, mode;
        std::uint64_t count;
        double expected;
    };
    std::vector<Row> rows;
    for (const auto& [cell, prob] : expect.explosions) {
        const auto it = dist.explosions.find(cell);
        rows.push_back({"explosion", fmt(cell.first), fmt(cell.second), "",
                        it == dist.explosions.end() ? 0 : it->second, prob});
    }
    for (std::size_t mode = 0; mode < expect.detections.size(); ++mode) {
        rows.push_back({"detection", "", "", fmt(mode), dist.detections_in(mode),
                        expect.detections[mode]});
    }
    rows.push_back({"lost", "", "", "", dist.lost, expect.lost});
    rows.push_back({"explosion_total", "", "", "", dist.total_explosions(),
                    expect.total_explosion()});
    rows.push_back({"target_detection", "", "", fmt(p.target), dist.detections_in(p.target),
                    expect.detections[p.target]});

    const double n = static_cast<double>(trials);
    auto fraction = [n](std::uint64_t c) { return static_cast<double>(c) / n; };
    auto sigmas = [n](double frac, double expected) {
        const double sd = std::sqrt(expected * (1.0 - expected) / n);
        return sd > 0.0 ? (frac - expected) / sd : 0.0;
    };

    std::string text;
    if (format_of(cfg) == Format::Json) {
        json doc;
        doc["command"] = "mc";
        doc["n"] = p.n_boxes;
        doc["m"] = p.small_cycles;
        doc["k"] = p.large_cycles;
        doc["theta"] = num(p.theta);
        doc["target"] = p.target;
        doc["trials"] = trials;
        doc["seed"] = cfg.seed;
        json outcomes = json::array();
        for (const Row& r : rows) {
            const double f = fraction(r.count);
            json o{{"outcome", r.outcome},
                   {"count", r.count},
                   {"fraction", num(f)},
                   {"expected", num(r.expected)},
                   {"sigmas", num(sigmas(f, r.expected))}};
            if (!r.large.empty()) o["large_cycle"] = std::stoul(r.large);
            if (!r.small.empty()) o["small_cycle"] = std::stoul(r.small);
            if (!r.mode.empty()) o["mode"] = std::stoul(r.mode);
            outcomes.push_back(o);
        }
        doc["outcomes"] = outcomes;
        text = doc.dump(2) + "\n";
    } else {
        text = csv_line({"outcome", "large_cycle", "small_cycle", "mode", "count", "fraction",
                         "expected", "sigmas"});
        for (const Row& r : rows) {
            const double f = fraction(r.count);
            text += csv_line({r.outcome, r.large, r.small, r.mode, std::to_string(r.count), fmt(f),
                              fmt(r.expected), fmt(sigmas(f, r.expected))});
        }
    }
    emit(cfg, text, out);
    return kSuccess;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream&) {
    const std::size_t n = single(cfg.n_values, "--n");
    const std::size_t q = require(cfg.queries, "--queries");
    if (n < 2) throw UsageError("--n must be >= 2");
    if (q > n) {
        throw UsageError("--queries (" + std::to_string(q) + ") exceeds --n (" +
                         std::to_string(n) + "); classical baseline undefined");
    }

    std::vector<std::pair<std::size_t, std::size_t>> plans;  // (M, k)
    if (cfg.search) {
        for (std::size_t m = 1; m <= q; ++m) {
            if (q % m == 0) plans.emplace_back(m, q / m);
        }
        if (plans.empty()) {
            throw UsageError("--queries must be >= 1 with --search");
        }
    } else {
        const std::size_t m = single(cfg.m_values, "--m");
        const std::size_t k = require(cfg.k, "--k");
        if (m < 1) throw UsageError("--m must be >= 1");
        if (k * m != q) {
            throw UsageError("--queries must equal --k times --m (got " + std::to_string(q) +
                             " vs " + std::to_string(k * m) + "); pass --search to enumerate");
        }
        plans.emplace_back(m, k);
    }

    std::vector<baselines::ComparisonRow> rows;
    for (const auto& [m, k] : plans) {
        rows.push_back(baselines::compare(n, m, theta_for(cfg, m), k));
    }

    std::string text;
    if (format_of(cfg) == Format::Json) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"n", r.n_boxes},
                           {"queries", r.queries},
                           {"m", r.small_cycles},
                           {"k", r.large_cycles},
                           {"theta", num(r.theta)},
                           {"classical", num(r.classical)},
                           {"grover", num(r.grover)},
                           {"ifm_grover", num(r.ifm_grover)}});
        }
        text = json{{"command", "compare"}, {"rows", arr}}.dump(2) + "\n";
    } else {
        text = csv_line({"n", "queries", "m", "k", "classical", "grover", "ifm_grover"});
        for (const auto& r : rows) {
            text += csv_line({fmt(r.n_boxes), fmt(r.queries), fmt(r.small_cycles),
                              fmt(r.large_cycles), fmt(r.classical), fmt(r.grover),
                              fmt(r.ifm_grover)});
        }
    }
    emit(cfg, text, out);
    return kSuccess;
}

// ---------------------------------------------------------------- fig3

int cmd_fig3(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::size_t n = cfg.n_values.empty() ? 64 : single(cfg.n_values, "--n");
    const std::vector<std::size_t> ms =
        cfg.m_values.empty() ? std::vector<std::size_t>{9, 12, 32} : cfg.m_values;
    const std::size_t k_max = cfg.k_max.value_or(20);
    if (n < 2) throw UsageError("--n must be >= 2");
    for (std::size_t m : ms) {
        if (m < 1) throw UsageError("--m values must be >= 1");
    }
    if (cfg.theta || (cfg.theta_mode && *cfg.theta_mode != "pi-over-m")) {
        throw UsageError("fig3 uses theta = pi/M; --theta/--theta-mode not supported");
    }

    const analysis::Fig3Dataset data = analysis::fig3_dataset(n, ms, k_max);
    for (const auto& [m, regime] : data.regimes) {
        err << "# M=" << m << " regime=" << closed_form::to_string(regime) << '\n';
    }

    std::string text;
    if (format_of(cfg) == Format::Json) {
        json regimes = json::object();
        for (const auto& [m, regime] : data.regimes) {
            regimes[std::to_string(m)] = std::string(closed_form::to_string(regime));
        }
        json rows = json::array();
        for (const auto& r : data.rows) {
            rows.push_back({{"n", n},
                            {"m", r.m},
                            {"k", r.k},
                            {"tau", num(r.tau)},
                            {"survival", num(r.survival)},
                            {"success", num(r.success)}});
        }
        text = json{{"command", "fig3"}, {"n", n}, {"regimes", regimes}, {"rows", rows}}.dump(2) +
               "\n";
    } else {
        text = csv_line({"n", "m", "k", "tau", "survival", "success"});
        for (const auto& r : data.rows) {
            text += csv_line(
                {fmt(n), fmt(r.m), fmt(r.k), fmt(r.tau), fmt(r.survival), fmt(r.success)});
        }
    }
    emit(cfg, text, out);
    return kSuccess;
}

// ---------------------------------------------------------------- grids

analysis::SweepGrid grid_from(const CliConfig& cfg) {
    analysis::SweepGrid grid = analysis::SweepGrid::default_grid();
    if (!cfg.n_values.empty()) grid.n_values = cfg.n_values;
    if (!cfg.m_values.empty()) grid.m_values = cfg.m_values;
    if (cfg.k_max) grid.k_max_rule = analysis::KMaxRule::fixed(*cfg.k_max);
    if (cfg.theta) {
        throw UsageError("--theta is not supported here; grids use --theta-mode pi-over-m");
    }
    if (cfg.theta_mode && *cfg.theta_mode != "pi-over-m") {
        throw UsageError("--theta-mode must be pi-over-m for grid commands");
    }
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--n/--m: ") + e.what());
    }
    return grid;
}

std::string pairs_text(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::string s;
    for (const auto& [n, m] : pairs) {
        if (!s.empty()) s += ' ';
        s += "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }
    return s;
}

int cmd_validate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const analysis::SweepGrid grid = grid_from(cfg);
    const analysis::ValidationReport report = analysis::validate_grid(grid, thread_budget());

    std::string text;
    if (format_of(cfg) == Format::Json) {
        json points = json::array();
        for (const auto& vp : report.points) {
            points.push_back({{"n", vp.point.n},
                              {"m", vp.point.m},
                              {"k", vp.point.k},
                              {"diff_tau", num(vp.diff_tau)},
                              {"diff_survival", num(vp.diff_survival)}});
        }
        json skipped = json::array();
        for (const auto& [n, m] : report.skipped) skipped.push_back({{"n", n}, {"m", m}});
        json doc{{"command", "validate"},
                 {"passed", report.passed},
                 {"threshold", analysis::kValidationThreshold},
                 {"max_abs_diff_tau", num(report.max_abs_diff_tau)},
                 {"max_abs_diff_survival", num(report.max_abs_diff_survival)},
                 {"worst_point",
                  {{"n", report.worst_point.n},
                   {"m", report.worst_point.m},
                   {"k", report.worst_point.k}}},
                 {"skipped", skipped},
                 {"points", points}};
        text = doc.dump(2) + "\n";
    } else {
        text = csv_line({"n", "m", "k", "diff_tau", "diff_survival"});
        for (const auto& vp : report.points) {
            text += csv_line({fmt(vp.point.n), fmt(vp.point.m), fmt(vp.point.k), fmt(vp.diff_tau),
                              fmt(vp.diff_survival)});
        }
    }
    emit(cfg, text, out);

    err << "points=" << report.points.size()
        << " max_abs_diff_tau=" << format_number(report.max_abs_diff_tau)
        << " max_abs_diff_survival=" << format_number(report.max_abs_diff_survival)
        << " worst=(" << report.worst_point.n << "," << report.worst_point.m << ","
        << report.worst_point.k << ")"
        << " passed=" << (report.passed ? "true" : "false") << '\n';
    if (!report.skipped.empty()) {
        err << "skipped (leak factor <= 0): " << pairs_text(report.skipped) << '\n';
    }
    return report.passed ? kSuccess : kValidationFailed;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const analysis::SweepGrid grid = grid_from(cfg);
    const analysis::SweepResult result = analysis::sweep(grid, thread_budget());

    std::string text;
    if (format_of(cfg) == Format::Json) {
        json rows = json::array();
        for (const auto& r : result.rows) {
            rows.push_back({{"n", r.n},
                            {"m", r.m},
                            {"cos_phi", num(r.cos_phi)},
                            {"regime", std::string(closed_form::to_string(r.regime))},
                            {"k_star", r.k_star},
                            {"success", num(r.success)},
                            {"grover", num(r.grover_at_k_star)}});
        }
        json findings = json::array();
        for (const auto& f : result.findings) {
            findings.push_back({{"n", f.n},
                                {"m_from", f.m_from},
                                {"m_to", f.m_to},
                                {"k_from", f.k_from},
                                {"k_to", f.k_to}});
        }
        text = json{{"command", "sweep"}, {"rows", rows}, {"findings", findings}}.dump(2) + "\n";
    } else {
        text = csv_line({"n", "m", "cos_phi", "regime", "k_star", "success", "grover"});
        for (const auto& r : result.rows) {
            text += csv_line({fmt(r.n), fmt(r.m), fmt(r.cos_phi),
                              std::string(closed_form::to_string(r.regime)), fmt(r.k_star),
                              fmt(r.success), fmt(r.grover_at_k_star)});
        }
    }
    emit(cfg, text, out);
    for (const auto& f : result.findings) {
        err << "finding: N=" << f.n << " optimal k rose from " << f.k_from << " (M=" << f.m_from
            << ") to " << f.k_to << " (M=" << f.m_to << ")\n";
    }
    if (!result.skipped.empty()) {
        err << "skipped (leak factor <= 0): " << pairs_text(result.skipped) << '\n';
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interaction-free-measurement Grover search simulator"};
    app.set_version_flag("--version", std::string("ifmsearch ") + IFMSEARCH_VERSION);
    app.require_subcommand(1);

    CliConfig cfg;
    const auto positive = CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max());
    const auto at_least_two = CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max());

    auto add_common_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("-o,--output", cfg.output_path, "Write output to this file");
    };
    auto add_theta = [&](CLI::App* sub) {
        auto* theta = sub->add_option("--theta", cfg.theta, "Rotation angle in radians");
        auto* mode = sub->add_option("--theta-mode", cfg.theta_mode, "pi-over-m | pi-over-2m")
                         ->check(CLI::IsMember({"pi-over-m", "pi-over-2m"}));
        theta->excludes(mode);
    };
    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n_values, "Number of boxes N")->check(at_least_two);
        sub->add_option("--m", cfg.m_values, "Small cycles per large cycle M")->check(positive);
        sub->add_option("--k", cfg.k, "Large cycles k");
        sub->add_option("--target", cfg.target, "Mode holding the bomb");
        add_theta(sub);
    };

    CLI::App* run_cmd = app.add_subcommand("run", "Per-large-cycle records of one search");
    add_instance(run_cmd);
    run_cmd->add_flag("--closed-form", cfg.closed_form,
                      "Fail (exit 1) if the closed-form columns cannot be computed");
    add_common_output(run_cmd);

    CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo trajectory sampling");
    add_instance(mc_cmd);
    mc_cmd->add_option("--trials", cfg.trials, "Number of trajectories")->required();
    mc_cmd->add_option("--seed", cfg.seed, "RNG seed");
    add_common_output(mc_cmd);

    CLI::App* compare_cmd = app.add_subcommand("compare", "Classical vs Grover vs IFM-Grover");
    add_instance(compare_cmd);
    compare_cmd->add_option("--queries", cfg.queries, "Query budget q = kM")->required();
    compare_cmd->add_flag("--search", cfg.search, "Enumerate every factorization q = kM");
    add_common_output(compare_cmd);

    CLI::App* fig3_cmd = app.add_subcommand("fig3", "Amplitude/survival/success curves versus k");
    fig3_cmd->add_option("--n", cfg.n_values, "Number of boxes N (default 64)")->check(at_least_two);
    fig3_cmd->add_option("--m", cfg.m_values, "Comma-separated M values (default 9,12,32)")
        ->delimiter(',')
        ->check(positive);
    fig3_cmd->add_option("--k-max", cfg.k_max, "Largest k (default 20)");
    add_theta(fig3_cmd);
    add_common_output(fig3_cmd);

    CLI::App* validate_cmd = app.add_subcommand("validate", "Closed form vs circuit simulation");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Regime and optimal k over a grid");
    for (CLI::App* sub : {validate_cmd, sweep_cmd}) {
        sub->add_option("--n", cfg.n_values, "Comma-separated N values")
            ->delimiter(',')
            ->check(at_least_two);
        sub->add_option("--m", cfg.m_values, "Comma-separated M values")
            ->delimiter(',')
            ->check(positive);
        sub->add_option("--k-max", cfg.k_max, "Fixed largest k (default ceil(2 sqrt N))");
        add_theta(sub);
        add_common_output(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(cfg, out, err);
        if (mc_cmd->parsed()) return cmd_mc(cfg, out, err);
        if (compare_cmd->parsed()) return cmd_compare(cfg, out, err);
        if (fig3_cmd->parsed()) return cmd_fig3(cfg, out, err);
        if (validate_cmd->parsed()) return cmd_validate(cfg, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

}  // namespace ifmsearch::cli
