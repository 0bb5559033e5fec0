// SPDX-License-Identifier: Apache-2.0
//
// ttdhp: designs delay-phase hybrid precoders, sweeps their wideband array
// gain to CSV, and verifies the closed-form optimum against the numeric
// oracle. Exit codes: 0 success, 1 invalid configuration, 2 verification
// failure.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ttdhp/qp_oracle.hpp"
#include "ttdhp/scenario.hpp"
#include "ttdhp/sweep.hpp"
#include "ttdhp/verify.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string out_path; // empty or "-" means stdout
    std::optional<std::uint64_t> seed;
    int workers{1};
    bool per_subcarrier{false};
};

void add_common(CLI::App *cmd, CommonOpts &opts) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario file (key = value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_path, "Output path ('-' for stdout)");
    cmd->add_option("--seed", opts.seed, "Override the scenario seed");
    cmd->add_option("--workers", opts.workers, "Worker threads for sweep points")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--per-subcarrier", opts.per_subcarrier,
                  "Emit one CSV row per subcarrier in addition to the summaries");
}

ttdhp::ScenarioFile load_scenario(const CommonOpts &opts) {
    ttdhp::ScenarioFile file;
    if (!opts.scenario_path.empty())
        file = ttdhp::parse_scenario_file(opts.scenario_path);
    if (opts.seed)
        file.seed = *opts.seed;
    return file;
}

// Keeps the stream alive while `run` writes to it.
int with_output(const CommonOpts &opts, const std::function<void(std::ostream &)> &run) {
    if (opts.out_path.empty() || opts.out_path == "-") {
        run(std::cout);
        return 0;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + opts.out_path + "'");
    run(out);
    return 0;
}

std::vector<ttdhp::Designer> parse_designers(const std::vector<std::string> &names) {
    std::vector<ttdhp::Designer> out;
    out.reserve(names.size());
    for (const std::string &name : names)
        out.push_back(ttdhp::parse_designer(name));
    return out;
}

std::string format_sig12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int cmd_gain_pattern(const CommonOpts &opts, const std::vector<int> &antenna_counts) {
    const ttdhp::ScenarioFile file = load_scenario(opts);
    const ttdhp::ScenarioParams sc = ttdhp::to_params(file);
    const auto points = ttdhp::run_gain_pattern(sc.grid, sc.directions.front(), antenna_counts,
                                                {opts.workers});
    return with_output(opts,
                       [&](std::ostream &out) { write_csv(out, points, opts.per_subcarrier); });
}

int cmd_sweep_nt(const CommonOpts &opts, const std::vector<int> &antenna_counts,
                 const std::vector<std::string> &designer_names) {
    const ttdhp::ScenarioParams sc = ttdhp::to_params(load_scenario(opts));
    const auto designers = parse_designers(designer_names);
    const auto points = ttdhp::run_nt_sweep(sc, antenna_counts, designers, {opts.workers});
    return with_output(opts,
                       [&](std::ostream &out) { write_csv(out, points, opts.per_subcarrier); });
}

int cmd_sweep_tmax(const CommonOpts &opts, std::vector<double> bounds_ps,
                   const std::vector<std::string> &designer_names) {
    const ttdhp::ScenarioParams sc = ttdhp::to_params(load_scenario(opts));
    std::vector<double> bounds_s;
    bounds_s.reserve(bounds_ps.size());
    for (double ps : bounds_ps)
        bounds_s.push_back(ps * 1e-12);
    const auto designers = parse_designers(designer_names);
    const auto points = ttdhp::run_tmax_sweep(sc, bounds_s, designers, {opts.workers});
    return with_output(opts,
                       [&](std::ostream &out) { write_csv(out, points, opts.per_subcarrier); });
}

int cmd_design(const CommonOpts &opts, const std::string &designer_name) {
    const ttdhp::ScenarioParams sc = ttdhp::to_params(load_scenario(opts));
    const ttdhp::Designer designer = ttdhp::parse_designer(designer_name);
    if (designer == ttdhp::Designer::fully_digital)
        throw std::invalid_argument(
            "design: the fully-digital reference has no phase/delay values to emit");
    const ttdhp::HybridDesign design = designer == ttdhp::Designer::closed_form
                                           ? ttdhp::optimal_design(sc)
                                           : ttdhp::baseline_design(sc);
    return with_output(opts, [&](std::ostream &out) {
        out << "chain,ttd,element,x_pi,t_ps\n";
        for (int l = 0; l < sc.geom.num_chains(); ++l)
            for (int m = 0; m < sc.geom.ttd_per_chain(); ++m)
                for (int n = 0; n < sc.geom.ps_per_ttd(); ++n)
                    out << (l + 1) << ',' << (m + 1) << ',' << (n + 1) << ','
                        << format_sig12(design.ps_phase(l, m, n)) << ','
                        << format_sig12(design.delay_s(l, m) * 1e12) << '\n';
    });
}

int cmd_criteria(const CommonOpts &opts) {
    const ttdhp::ScenarioParams sc = ttdhp::to_params(load_scenario(opts));
    double direction = 0.0;
    for (double d : sc.directions)
        direction = std::max(direction, std::abs(d));
    const int m = sc.geom.ttd_per_chain();
    const double carrier = sc.grid.carrier_hz();
    const double real_bound =
        ttdhp::antenna_bound(m, carrier, sc.delay_bound_s, direction, m - 1);
    const auto count = ttdhp::max_antenna_count(m, carrier, sc.delay_bound_s, direction);
    const double min_bound =
        ttdhp::min_delay_bound(sc.geom.num_antennas(), m, carrier, direction);
    return with_output(opts, [&](std::ostream &out) {
        out << "max_nt_real " << (count ? format_sig12(real_bound) : "inf") << "\n";
        out << "max_nt " << (count ? std::to_string(*count) : "unbounded") << "\n";
        out << "min_tmax_ps " << format_sig12(min_bound * 1e12) << "\n";
        out << "min_tmax_s " << format_sig12(min_bound) << "\n";
    });
}

int cmd_verify(const CommonOpts &opts, int count, bool inject_fault) {
    ttdhp::BatchOutcome outcome;
    if (!opts.scenario_path.empty()) {
        const ttdhp::ScenarioParams sc = ttdhp::to_params(load_scenario(opts));
        outcome = ttdhp::run_verify_scenario(sc, inject_fault);
    } else {
        ttdhp::BatchSpec spec;
        spec.seed = opts.seed.value_or(ttdhp::ScenarioFile{}.seed);
        spec.count = count;
        spec.inject_fault = inject_fault;
        outcome = ttdhp::run_verify_batch(spec);
    }
    with_output(opts, [&](std::ostream &out) { out << outcome.summary() << "\n"; });
    return outcome.pass ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Delay-phase hybrid precoder designer and verifier"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto *gain_pattern = app.add_subcommand(
        "gain-pattern", "Matched-beam gain across subcarriers for several array sizes");
    std::vector<int> pattern_counts{16, 128, 1024};
    add_common(gain_pattern, opts);
    gain_pattern->add_option("--nt", pattern_counts, "Antenna counts to profile")
        ->delimiter(',');

    auto *sweep_nt =
        app.add_subcommand("sweep-nt", "Average array gain versus antenna count");
    std::vector<int> sweep_counts{32, 64, 256, 512, 1024};
    std::vector<std::string> nt_designers{"closed_form", "baseline"};
    add_common(sweep_nt, opts);
    sweep_nt->add_option("--nt", sweep_counts, "Antenna counts to sweep")->delimiter(',');
    sweep_nt->add_option("--designers", nt_designers,
                         "closed_form, baseline, fully_digital")
        ->delimiter(',');

    auto *sweep_tmax =
        app.add_subcommand("sweep-tmax", "Average array gain versus per-device delay bound");
    std::vector<double> bounds_ps;
    std::vector<std::string> tmax_designers{"closed_form", "baseline"};
    add_common(sweep_tmax, opts);
    sweep_tmax->add_option("--tmax-ps", bounds_ps,
                           "Delay bounds in picoseconds (default 200..400 step 10)")
        ->delimiter(',');
    sweep_tmax->add_option("--designers", tmax_designers,
                           "closed_form, baseline, fully_digital")
        ->delimiter(',');

    auto *design = app.add_subcommand(
        "design", "Emit one designer's phase and delay values as CSV");
    std::string design_designer{"closed_form"};
    add_common(design, opts);
    design->add_option("--designer", design_designer, "closed_form or baseline");

    auto *verify = app.add_subcommand(
        "verify", "Run the verification suite (oracle agreement and properties)");
    int verify_count = 100;
    bool inject_fault = false;
    add_common(verify, opts);
    verify->add_option("--count", verify_count, "Randomized scenarios in the batch")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--inject-fault", inject_fault,
                     "Negative control: perturb one design and expect failure");

    auto *criteria = app.add_subcommand(
        "criteria", "Print the antenna-count and delay-bound selection limits");
    add_common(criteria, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gain_pattern->parsed())
            return cmd_gain_pattern(opts, pattern_counts);
        if (sweep_nt->parsed())
            return cmd_sweep_nt(opts, sweep_counts, nt_designers);
        if (sweep_tmax->parsed()) {
            if (bounds_ps.empty())
                for (int ps = 200; ps <= 400; ps += 10)
                    bounds_ps.push_back(static_cast<double>(ps));
            return cmd_sweep_tmax(opts, bounds_ps, tmax_designers);
        }
        if (design->parsed())
            return cmd_design(opts, design_designer);
        if (verify->parsed())
            return cmd_verify(opts, verify_count, inject_fault);
        if (criteria->parsed())
            return cmd_criteria(opts);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand selected\n";
    return 1;
}
