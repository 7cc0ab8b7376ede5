// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Declarative experiment configuration: strict JSON parsing with unknown-key
// rejection, range validation, and canonical re-serialization for sidecars.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "z3ro/pa.hpp"

namespace z3ro {

enum class ExperimentKind {
    ArrayGain,
    Pattern,
    CompareMaxima,
    SweepBackoffFixedPpa,
    SweepBackoffFixedPsat,
    ErgodicRate,
    Verify,
};

/// Canonical lowercase-hyphen name used by the CLI and config files.
std::string_view experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_name(std::string_view name);

struct ChannelSpec {
    enum class Kind { LosUla, IidRayleigh, File };
    Kind kind = Kind::LosUla;
    double beta = 1.0;
    std::string path; // File kind only
};

/// All knobs of a run. Defaults reproduce the headline sweep configuration;
/// every field is recorded (resolved) in the JSON sidecar next to the CSV.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::ArrayGain;
    int M = 64;
    int M_s = 1;
    std::optional<std::vector<int>> saturated_set; // default: median-gain set
    ChannelSpec channel;
    PaModel pa = Rapp{2.0, 1.0};
    double theta_deg = 80.0;
    double spacing_over_lambda = 0.5;
    double snr_budget_db = 26.0; // M*beta*p/sigma_v^2 (or p_sat variant) in dB
    std::vector<double> backoff_grid_db; // default: 20 points in [-10, 2]
    long long n_symbols = 100000;
    int n_channels = 100;
    int n_theta = 2048;
    std::uint64_t seed = 0;
    std::string output_path; // default: "<experiment-name>.csv"
    int threads = 1;
};

/// 20 evenly spaced back-off points spanning [-10, 2] dB.
std::vector<double> default_backoff_grid();

/// Resolved output path (fills the per-experiment default when empty).
std::string resolved_output_path(const ExperimentConfig& cfg);

struct ValidationResult {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors; // "path: reason" entries

    bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parses and validates a JSON config document. Strict: unknown keys are
/// errors. On failure `config` is empty and `errors` lists every violation
/// with its key path.
ValidationResult validate(std::string_view config_text);

/// Range/consistency checks on an already-built config (used by the CLI
/// after applying flag overrides). Returns the error list; empty = valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// Canonical JSON (sorted keys, resolved defaults) for the sidecar.
std::string to_json_string(const ExperimentConfig& cfg);

} // namespace z3ro
