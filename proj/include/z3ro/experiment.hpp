// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors
//
// Experiment runner: turns a validated configuration into a CSV dataset plus
// a JSON sidecar recording every resolved parameter. Sweep points run in
// parallel; rows are always written in grid order, so output is byte-
// identical across thread counts and reruns.

#pragma once

#include "z3ro/config.hpp"

namespace z3ro {

/// Runs one experiment end to end and writes resolved_output_path(cfg) and
/// "<output>.meta.json". Returns a process exit code: 0 on success, 1 when a
/// verification run had failing checks, 2 on invalid configuration or I/O
/// failure (diagnostics on stderr). Infeasible line-search rows are flagged
/// in the CSV and the run continues.
int run(const ExperimentConfig& cfg);

} // namespace z3ro
