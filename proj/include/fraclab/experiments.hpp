#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraclab/ifs.hpp"

namespace fraclab {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::string out_dir = "out";
  int threads = 1;
  std::uint64_t seed = 0;
  std::int64_t max_cells = kDefaultCellCap;
};

/// Names accepted by run_experiment / the CLI.
const std::vector<std::string>& experiment_names();

/// Dispatches to the named experiment. Every experiment is a pure function
/// of its config plus the explicit seed: re-runs bit-reproduce all CSV/JSON
/// outputs regardless of the thread cap. The returned report (also written
/// to <out>/<name>_report.json) embeds the config hash, the tool version,
/// the resource caps hit, and a `pass` flag that is true iff all thresholds
/// declared in the config hold.
nlohmann::json run_experiment(const std::string& name,
                              const nlohmann::json& config,
                              const RunOptions& opts);

nlohmann::json run_cprod2(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_tprod(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_tdistance(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_cradproj(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_ltech1(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_overlap_demo(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_sweep(const nlohmann::json& config, const RunOptions& opts);
nlohmann::json run_estimate(const nlohmann::json& config, const RunOptions& opts);

}  // namespace fraclab
