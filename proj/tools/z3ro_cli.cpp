// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Command-line driver: one subcommand per experiment. Values are resolved in
// three layers (built-in defaults, then --config file, then flags) and the
// fully resolved configuration is recorded in the output's JSON sidecar.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "z3ro/config.hpp"
#include "z3ro/experiment.hpp"
#include "z3ro/pa.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out;
    int threads = 1;
    int m = 64;
    int ms = 1;
    std::vector<int> sat_set;
    std::string channel;
    double beta = 1.0;
    std::string channel_file;
    std::string pa;
    double theta_deg = 80.0;
    double spacing = 0.5;
    double budget_db = 26.0;
    std::vector<double> backoff_grid;
    long long n_symbols = 100000;
    int n_channels = 100;
    int n_theta = 2048;
    std::string mode = "fixed-ppa";
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path,
                    "JSON config file (flags override its values)");
    sub->add_option("--seed", f.seed, "master random seed");
    sub->add_option("--out", f.out, "output CSV path");
    sub->add_option("--threads", f.threads, "worker threads for sweep points");
    sub->add_option("--m", f.m, "number of antennas");
    sub->add_option("--ms", f.ms, "number of saturated antennas");
    sub->add_option("--sat-set", f.sat_set,
                    "explicit saturated antenna indices (comma separated)")
        ->delimiter(',');
    sub->add_option("--channel", f.channel, "channel kind")
        ->check(CLI::IsMember({"los-ula", "iid-rayleigh", "file"}));
    sub->add_option("--beta", f.beta, "average channel energy per antenna");
    sub->add_option("--channel-file", f.channel_file,
                    "CSV channel file (implies --channel file)");
    sub->add_option("--pa", f.pa,
                    "PA spec: linear | third-order:a3=<c> | "
                    "rapp:S=<v>,psat=<v> | softlim:psat=<v>");
    sub->add_option("--theta-deg", f.theta_deg, "user direction in degrees");
    sub->add_option("--spacing", f.spacing, "antenna spacing over wavelength");
    sub->add_option("--budget-db", f.budget_db,
                    "power budget M*beta*p (or M*beta*p_sat) in dB");
    sub->add_option("--backoff-grid", f.backoff_grid,
                    "back-off grid in dB (comma separated, ascending)")
        ->delimiter(',');
    sub->add_option("--n-symbols", f.n_symbols, "symbols per metric point");
    sub->add_option("--n-channels", f.n_channels, "channel draws per point");
    sub->add_option("--n-theta", f.n_theta, "pattern grid resolution");
}

int build_and_run(CLI::App* sub, const Flags& f, z3ro::ExperimentKind kind) {
    z3ro::ExperimentConfig cfg;
    if (sub->count("--config")) {
        std::ifstream in(f.config_path, std::ios::binary);
        if (!in) {
            std::cerr << "config: cannot open " << f.config_path << "\n";
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        // The file's own experiment/range consistency is re-checked below
        // once the subcommand and flag overrides are applied.
        z3ro::ValidationResult parsed = z3ro::validate(text.str());
        if (!parsed.config) {
            for (const std::string& e : parsed.errors) std::cerr << e << "\n";
            return 2;
        }
        cfg = *parsed.config;
    }

    cfg.experiment = kind;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--out")) cfg.output_path = f.out;
    if (sub->count("--threads")) cfg.threads = f.threads;
    if (sub->count("--m")) cfg.M = f.m;
    if (sub->count("--ms")) cfg.M_s = f.ms;
    if (sub->count("--sat-set")) cfg.saturated_set = f.sat_set;
    if (sub->count("--channel")) {
        if (f.channel == "los-ula") {
            cfg.channel.kind = z3ro::ChannelSpec::Kind::LosUla;
        } else if (f.channel == "iid-rayleigh") {
            cfg.channel.kind = z3ro::ChannelSpec::Kind::IidRayleigh;
        } else {
            cfg.channel.kind = z3ro::ChannelSpec::Kind::File;
        }
    }
    if (sub->count("--beta")) cfg.channel.beta = f.beta;
    if (sub->count("--channel-file")) {
        cfg.channel.kind = z3ro::ChannelSpec::Kind::File;
        cfg.channel.path = f.channel_file;
    }
    if (sub->count("--pa")) {
        try {
            cfg.pa = z3ro::parse_pa_spec(f.pa);
        } catch (const std::invalid_argument& e) {
            std::cerr << "pa: " << e.what() << "\n";
            return 2;
        }
    }
    if (sub->count("--theta-deg")) cfg.theta_deg = f.theta_deg;
    if (sub->count("--spacing")) cfg.spacing_over_lambda = f.spacing;
    if (sub->count("--budget-db")) cfg.snr_budget_db = f.budget_db;
    if (sub->count("--backoff-grid")) cfg.backoff_grid_db = f.backoff_grid;
    if (sub->count("--n-symbols")) cfg.n_symbols = f.n_symbols;
    if (sub->count("--n-channels")) cfg.n_channels = f.n_channels;
    if (sub->count("--n-theta")) cfg.n_theta = f.n_theta;

    // Subcommand-specific defaults, applied only when nothing was specified:
    // pattern needs a third-order PA, rate needs a fading channel.
    const bool bare = !sub->count("--config");
    if (kind == z3ro::ExperimentKind::Pattern && bare && !sub->count("--pa")) {
        cfg.pa = z3ro::ThirdOrder{};
    }
    if (kind == z3ro::ExperimentKind::ErgodicRate && bare &&
        !sub->count("--channel")) {
        cfg.channel.kind = z3ro::ChannelSpec::Kind::IidRayleigh;
    }

    const std::vector<std::string> errors = z3ro::validate_config(cfg);
    if (!errors.empty()) {
        for (const std::string& e : errors) std::cerr << e << "\n";
        return 2;
    }
    return z3ro::run(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distortion-nulling precoder simulations"};
    app.require_subcommand(1);

    Flags f;
    CLI::App* array_gain = app.add_subcommand(
        "array-gain", "Closed-form array gain and penalty versus M");
    CLI::App* pattern = app.add_subcommand(
        "pattern", "Linear and distortion radiation patterns");
    CLI::App* compare = app.add_subcommand(
        "compare-maxima",
        "Per-antenna candidate maxima versus the closed-form heuristic");
    CLI::App* sweep = app.add_subcommand(
        "sweep-backoff", "SNR/SDR/SNDR versus PA back-off on one channel");
    CLI::App* rate = app.add_subcommand(
        "rate", "Ergodic rate versus back-off over fading channels");
    CLI::App* verify = app.add_subcommand(
        "verify", "Run the independent verification suite");
    for (CLI::App* sub : {array_gain, pattern, compare, sweep, rate, verify}) {
        add_common(sub, f);
    }
    sweep->add_option("--mode", f.mode, "which power is held fixed")
        ->check(CLI::IsMember({"fixed-ppa", "fixed-psat"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (app.got_subcommand(array_gain)) {
        return build_and_run(array_gain, f, z3ro::ExperimentKind::ArrayGain);
    }
    if (app.got_subcommand(pattern)) {
        return build_and_run(pattern, f, z3ro::ExperimentKind::Pattern);
    }
    if (app.got_subcommand(compare)) {
        return build_and_run(compare, f, z3ro::ExperimentKind::CompareMaxima);
    }
    if (app.got_subcommand(sweep)) {
        return build_and_run(sweep, f,
                             f.mode == "fixed-psat"
                                 ? z3ro::ExperimentKind::SweepBackoffFixedPsat
                                 : z3ro::ExperimentKind::SweepBackoffFixedPpa);
    }
    if (app.got_subcommand(rate)) {
        return build_and_run(rate, f, z3ro::ExperimentKind::ErgodicRate);
    }
    return build_and_run(verify, f, z3ro::ExperimentKind::Verify);
}
