#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supwave/config.hpp"

namespace supwave {

struct RunOptions {
  std::string out_dir;  // wins over config out_dir and SUPWAVE_OUT
  int workers = 0;      // wins over config when positive
  std::optional<std::uint64_t> seed_override;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCheckFailure = 3;

const std::vector<std::string>& experiment_names();

// Run one experiment: writes <out>/<name>.csv and <out>/<name>_summary.json,
// prints one line per check, returns the exit code.
int run_experiment(const std::string& name, const Config& cfg, const RunOptions& opts);

}  // namespace supwave
