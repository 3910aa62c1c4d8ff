#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apnls/core/series.hpp"
#include "apnls/nls/nonlinearity.hpp"
#include "apnls/nls/solver.hpp"

namespace apnls::io {

inline constexpr int kSchemaVersion = 1;

enum class RunMode { Picard, Step, Classify, Scan };

std::string to_string(RunMode mode);

struct ScanConfig {
  std::vector<Complex> lambdas;
  std::vector<Complex> means;
  // Amplitude of an added e^{i omega_1 x} mode; keeps the mean unchanged.
  double oscillation = 0.0;
  // Also run the stepper forward and backward in every cell.
  bool simulate = false;
};

struct ExperimentConfig {
  BasisPtr basis;
  APSeries initial{make_basis({1.0})};
  NonlinearitySpec nonlinearity;
  SolverConfig solver;
  RunMode mode = RunMode::Step;
  std::string trace_csv = "trace.csv";
  std::string summary_json = "summary.json";
  std::string scan_csv = "scan.csv";
  std::uint64_t seed = 0;
  ScanConfig scan;
  int check_radius = 3;
};

// Validates the schema version, rejects unknown keys, and checks every
// module-level invariant. Throws ConfigError. seed_override replaces the
// config's seed before random initial data is generated.
ExperimentConfig parse_config(const nlohmann::json& doc,
                              std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace apnls::io
