#pragma once

// Mode dispatch. Exit codes: 0 when a verdict was computed (including
// "unstable"), 1 when the answer is inconclusive or only numerically
// supported, 2 for input errors.

#include "finsec/report.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace finsec {

enum ExitCode : int { kExitVerdict = 0, kExitInconclusive = 1, kExitInputError = 2 };

struct RunOptions {
    /// Overrides the config's output directory.
    std::optional<std::filesystem::path> out;
    int threads = 1;
    /// Overrides the config's seed.
    std::optional<std::uint64_t> seed;
    /// Write report and plot files; off for in-process use that only needs the document.
    bool write_files = true;
};

struct RunResult {
    int exit_code = kExitInputError;
    std::optional<ReportDocument> report;
    std::vector<std::filesystem::path> artifacts;
    /// Human summary, or the error message for exit code 2.
    std::string message;
};

/// Runs cfg.mode. Computational errors give exit code 1, invalid inputs exit code 2.
RunResult run(const Config& cfg, const RunOptions& opt = {});

/// Reads and parses the config file, forces `mode`, runs, and prints the
/// summary to `out` and errors to `err`.
int run_cli(const std::string& mode, const std::filesystem::path& config_path, const RunOptions& opt,
            std::ostream& out, std::ostream& err);

}  // namespace finsec
