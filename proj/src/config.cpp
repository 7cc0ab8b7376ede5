// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace z3ro {

namespace {

using nlohmann::json;

constexpr std::string_view kExperimentNames[] = {
    "array-gain",
    "pattern",
    "compare-maxima",
    "sweep-backoff-fixed-ppa",
    "sweep-backoff-fixed-psat",
    "rate",
    "verify",
};

constexpr std::string_view kChannelNames[] = {"los-ula", "iid-rayleigh",
                                              "file"};

} // namespace

std::string_view experiment_name(ExperimentKind kind) {
    return kExperimentNames[static_cast<int>(kind)];
}

std::optional<ExperimentKind> parse_experiment_name(std::string_view name) {
    for (int i = 0; i < static_cast<int>(std::size(kExperimentNames)); ++i) {
        if (kExperimentNames[i] == name) {
            return static_cast<ExperimentKind>(i);
        }
    }
    return std::nullopt;
}

std::vector<double> default_backoff_grid() {
    std::vector<double> grid(20);
    for (int i = 0; i < 20; ++i) grid[i] = -10.0 + 12.0 * i / 19.0;
    return grid;
}

std::string resolved_output_path(const ExperimentConfig& cfg) {
    if (!cfg.output_path.empty()) return cfg.output_path;
    return std::string(experiment_name(cfg.experiment)) + ".csv";
}

namespace {

class Parser {
  public:
    explicit Parser(std::vector<std::string>& errors) : errors_(errors) {}

    void err(const std::string& path, const std::string& reason) {
        errors_.push_back(path + ": " + reason);
    }

    void check_keys(const json& obj, const std::string& prefix,
                    const std::set<std::string>& allowed) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!allowed.count(it.key())) {
                err(prefix.empty() ? it.key() : prefix + "." + it.key(),
                    "unknown key");
            }
        }
    }

    bool get_int(const json& obj, const std::string& key, long long& out) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        if (!v.is_number_integer() && !v.is_number_unsigned()) {
            err(key, "expected an integer");
            return false;
        }
        out = v.get<long long>();
        return true;
    }

    bool get_u64(const json& obj, const std::string& key,
                 std::uint64_t& out) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        if (v.is_number_unsigned()) {
            out = v.get<std::uint64_t>();
            return true;
        }
        if (v.is_number_integer() && v.get<long long>() >= 0) {
            out = static_cast<std::uint64_t>(v.get<long long>());
            return true;
        }
        err(key, "expected a non-negative integer");
        return false;
    }

    bool get_double(const json& obj, const std::string& key, double& out) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        if (!v.is_number()) {
            err(key, "expected a number");
            return false;
        }
        out = v.get<double>();
        return true;
    }

    bool get_string(const json& obj, const std::string& key,
                    std::string& out) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        if (!v.is_string()) {
            err(key, "expected a string");
            return false;
        }
        out = v.get<std::string>();
        return true;
    }

  private:
    std::vector<std::string>& errors_;
};

} // namespace

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> errors;
    const auto err = [&](const std::string& path, const std::string& reason) {
        errors.push_back(path + ": " + reason);
    };

    if (cfg.M < 2) err("m", "must be at least 2");
    if (cfg.M > (1 << 20)) err("m", "must be at most 1048576");

    if (cfg.M_s < 1 || 2 * cfg.M_s >= cfg.M) {
        err("m_s", "saturated set must satisfy 0 < M_s < M/2");
    }
    if (cfg.saturated_set) {
        const auto& set = *cfg.saturated_set;
        if (set.empty() || 2 * static_cast<int>(set.size()) >= cfg.M) {
            err("saturated_set", "saturated set must satisfy 0 < M_s < M/2");
        }
        std::set<int> seen;
        for (int idx : set) {
            if (idx < 0 || idx >= cfg.M) {
                err("saturated_set", "antenna index " + std::to_string(idx) +
                                         " out of range");
            } else if (!seen.insert(idx).second) {
                err("saturated_set", "antenna index " + std::to_string(idx) +
                                         " repeated");
            }
        }
    }

    if (!(cfg.channel.beta > 0.0) || !std::isfinite(cfg.channel.beta)) {
        err("channel.beta", "must be positive and finite");
    }
    if (cfg.channel.kind == ChannelSpec::Kind::File &&
        cfg.channel.path.empty()) {
        err("channel.path", "required when channel.kind is \"file\"");
    }

    if (!std::isfinite(cfg.theta_deg)) err("theta_deg", "must be finite");
    if (!(cfg.spacing_over_lambda > 0.0) ||
        !std::isfinite(cfg.spacing_over_lambda)) {
        err("spacing_over_lambda", "must be positive and finite");
    }
    if (!std::isfinite(cfg.snr_budget_db)) {
        err("snr_budget_db", "must be finite");
    }

    for (std::size_t i = 0; i < cfg.backoff_grid_db.size(); ++i) {
        if (!std::isfinite(cfg.backoff_grid_db[i])) {
            err("backoff_grid_db", "values must be finite");
            break;
        }
        if (i > 0 && cfg.backoff_grid_db[i] <= cfg.backoff_grid_db[i - 1]) {
            err("backoff_grid_db", "must be sorted strictly ascending");
            break;
        }
    }

    if (cfg.n_symbols < 1000) err("n_symbols", "must be at least 1000");
    if (cfg.n_channels < 10) err("n_channels", "must be at least 10");
    if (cfg.n_theta < 2) err("n_theta", "must be at least 2");
    if (cfg.threads < 1) err("threads", "must be at least 1");

    switch (cfg.experiment) {
    case ExperimentKind::Pattern:
        if (!std::holds_alternative<ThirdOrder>(cfg.pa)) {
            err("pa", "pattern experiments require a third-order model");
        }
        if (cfg.channel.kind != ChannelSpec::Kind::LosUla) {
            err("channel.kind", "pattern experiments require \"los-ula\"");
        }
        break;
    case ExperimentKind::SweepBackoffFixedPpa:
    case ExperimentKind::SweepBackoffFixedPsat:
        if (!has_p_sat(cfg.pa)) {
            err("pa", "back-off sweeps require a saturating model "
                      "(rapp or softlim)");
        }
        break;
    case ExperimentKind::ErgodicRate:
        if (!has_p_sat(cfg.pa)) {
            err("pa", "back-off sweeps require a saturating model "
                      "(rapp or softlim)");
        }
        if (cfg.channel.kind != ChannelSpec::Kind::IidRayleigh) {
            err("channel.kind", "rate experiments require \"iid-rayleigh\"");
        }
        break;
    default:
        break;
    }

    return errors;
}

ValidationResult validate(std::string_view config_text) {
    ValidationResult result;
    Parser p(result.errors);

    json root;
    try {
        root = json::parse(config_text);
    } catch (const json::parse_error& e) {
        p.err("config", e.what());
        return result;
    }
    if (!root.is_object()) {
        p.err("config", "top level must be an object");
        return result;
    }

    ExperimentConfig cfg;
    p.check_keys(root, "",
                 {"experiment", "m", "m_s", "saturated_set", "channel", "pa",
                  "theta_deg", "spacing_over_lambda", "snr_budget_db",
                  "backoff_grid_db", "n_symbols", "n_channels", "n_theta",
                  "seed", "output_path", "threads"});

    std::string name;
    if (p.get_string(root, "experiment", name)) {
        if (auto kind = parse_experiment_name(name)) {
            cfg.experiment = *kind;
        } else {
            p.err("experiment", "unknown experiment \"" + name + "\"");
        }
    }

    long long ll = 0;
    if (p.get_int(root, "m", ll)) cfg.M = static_cast<int>(ll);
    if (p.get_int(root, "m_s", ll)) cfg.M_s = static_cast<int>(ll);

    if (root.contains("saturated_set")) {
        const json& arr = root.at("saturated_set");
        if (!arr.is_array()) {
            p.err("saturated_set", "expected an array of antenna indices");
        } else {
            std::vector<int> set;
            bool ok = true;
            for (const json& v : arr) {
                if (!v.is_number_integer() && !v.is_number_unsigned()) {
                    p.err("saturated_set", "expected an array of integers");
                    ok = false;
                    break;
                }
                set.push_back(v.get<int>());
            }
            if (ok) cfg.saturated_set = std::move(set);
        }
    }

    if (root.contains("channel")) {
        const json& ch = root.at("channel");
        if (!ch.is_object()) {
            p.err("channel", "expected an object");
        } else {
            p.check_keys(ch, "channel", {"kind", "beta", "path"});
            std::string kind;
            if (p.get_string(ch, "kind", kind)) {
                if (kind == kChannelNames[0]) {
                    cfg.channel.kind = ChannelSpec::Kind::LosUla;
                } else if (kind == kChannelNames[1]) {
                    cfg.channel.kind = ChannelSpec::Kind::IidRayleigh;
                } else if (kind == kChannelNames[2]) {
                    cfg.channel.kind = ChannelSpec::Kind::File;
                } else {
                    p.err("channel.kind", "unknown channel kind \"" + kind +
                                              "\" (los-ula, iid-rayleigh, "
                                              "file)");
                }
            }
            double beta = 0.0;
            if (ch.contains("beta")) {
                if (!ch.at("beta").is_number()) {
                    p.err("channel.beta", "expected a number");
                } else {
                    beta = ch.at("beta").get<double>();
                    cfg.channel.beta = beta;
                }
            }
            p.get_string(ch, "path", cfg.channel.path);
        }
    }

    std::string pa_text;
    if (p.get_string(root, "pa", pa_text)) {
        try {
            cfg.pa = parse_pa_spec(pa_text);
        } catch (const std::invalid_argument& e) {
            p.err("pa", e.what());
        }
    }

    p.get_double(root, "theta_deg", cfg.theta_deg);
    p.get_double(root, "spacing_over_lambda", cfg.spacing_over_lambda);
    p.get_double(root, "snr_budget_db", cfg.snr_budget_db);

    if (root.contains("backoff_grid_db")) {
        const json& arr = root.at("backoff_grid_db");
        if (!arr.is_array() || arr.empty()) {
            p.err("backoff_grid_db", "expected a non-empty array of numbers");
        } else {
            std::vector<double> grid;
            bool ok = true;
            for (const json& v : arr) {
                if (!v.is_number()) {
                    p.err("backoff_grid_db", "expected numbers");
                    ok = false;
                    break;
                }
                grid.push_back(v.get<double>());
            }
            if (ok) cfg.backoff_grid_db = std::move(grid);
        }
    }

    if (p.get_int(root, "n_symbols", ll)) cfg.n_symbols = ll;
    if (p.get_int(root, "n_channels", ll)) cfg.n_channels = static_cast<int>(ll);
    if (p.get_int(root, "n_theta", ll)) cfg.n_theta = static_cast<int>(ll);
    p.get_u64(root, "seed", cfg.seed);
    p.get_string(root, "output_path", cfg.output_path);
    if (p.get_int(root, "threads", ll)) cfg.threads = static_cast<int>(ll);

    // Range checks run even after parse errors (on defaults for the fields
    // that failed to parse) so one pass reports every violation.
    auto range_errors = validate_config(cfg);
    result.errors.insert(result.errors.end(), range_errors.begin(),
                         range_errors.end());
    if (result.errors.empty()) result.config = std::move(cfg);
    return result;
}

std::string to_json_string(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = std::string(experiment_name(cfg.experiment));
    j["m"] = cfg.M;
    j["m_s"] = cfg.M_s;
    if (cfg.saturated_set) {
        j["saturated_set"] = *cfg.saturated_set;
    } else {
        j["saturated_set"] = nullptr;
    }
    j["channel"]["kind"] =
        std::string(kChannelNames[static_cast<int>(cfg.channel.kind)]);
    j["channel"]["beta"] = cfg.channel.beta;
    j["channel"]["path"] = cfg.channel.path;
    j["pa"] = pa_spec_string(cfg.pa);
    j["theta_deg"] = cfg.theta_deg;
    j["spacing_over_lambda"] = cfg.spacing_over_lambda;
    j["snr_budget_db"] = cfg.snr_budget_db;
    j["backoff_grid_db"] = cfg.backoff_grid_db.empty()
                               ? default_backoff_grid()
                               : cfg.backoff_grid_db;
    j["n_symbols"] = cfg.n_symbols;
    j["n_channels"] = cfg.n_channels;
    j["n_theta"] = cfg.n_theta;
    j["seed"] = cfg.seed;
    j["output_path"] = resolved_output_path(cfg);
    j["threads"] = cfg.threads;
    return j.dump(2) + "\n";
}

} // namespace z3ro
