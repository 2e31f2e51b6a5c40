// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Config-driven experiment runners. Each writes into its output directory:
// the result tables (CSV and a JSON mirror), SVG plots, `config.resolved`,
// `VERSION` and a `manifest.txt` listing the files. Tables are only written
// once every point has succeeded.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fc/config.hpp"

namespace fc {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { ground, excited, generic, distribution, analyze };

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

struct RunResult {
  std::filesystem::path output_dir;
  std::vector<std::string> files;
};

/// Worker count from FC_THREADS, else the hardware concurrency.
int worker_count();

RunResult run_experiment(ExperimentKind kind, const Config& config);

RunResult run_ground_sweep(const Config& config);
RunResult run_excited_sweep(const Config& config);
RunResult run_generic_baseline(const Config& config);
RunResult run_distribution(const Config& config);
RunResult run_scaling_fit(const Config& config);

}  // namespace fc
