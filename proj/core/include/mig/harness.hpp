#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "mig/config.hpp"

namespace mig {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct RunPaths {
    std::string csv;
    std::string sidecar;
};

/// Output locations `<out_dir>/<basename>.csv` and `.json`.
RunPaths run_paths(const std::string& out_dir, const ResolvedConfig& config);

/// Runs the configured experiment and writes the CSV plus a JSON sidecar
/// (resolved config, seed, per-row standard errors, thresholds where
/// applicable). A mid-run failure writes the rows collected so far to
/// `<basename>.csv.partial` and rethrows.
void run_experiment(const ResolvedConfig& config, const std::string& out_dir);

/// Maps a parsed CLI request to work and an exit code: 0 success, 2 invalid
/// config or subcommand/experiment mismatch, 3 mid-run failure (partial
/// results on disk). `validate` prints the resolved config to `out`.
int run_cli(const std::string& subcommand, const std::string& config_path,
            const std::string& out_dir, std::optional<std::uint64_t> seed_override,
            std::optional<int> threads_override, std::ostream& out, std::ostream& err);

} // namespace mig
