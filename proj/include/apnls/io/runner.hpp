#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "apnls/io/config.hpp"

namespace apnls::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitAccuracyAbort = 2;
inline constexpr int kExitSolverError = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  nlohmann::json summary;
};

// Executes cfg.mode and writes the trace CSV / scan table and the JSON
// summary into out_dir (created if missing).
RunOutcome run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// Collision scan of the configured basis; writes the summary JSON.
RunOutcome check_basis(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace apnls::io
