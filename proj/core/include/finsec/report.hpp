#pragma once

// Run report: environment, the resolved configuration and whatever the
// selected mode produced. Serialized as JSON; parse_report inverts
// serialize_report exactly.

#include "finsec/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace finsec {

struct ConvergenceSummary {
    std::vector<numerics::ConvergenceRecord> records;
    double grid_tau = 0.0;
    int n = 0;
    bool singular = false;
    double final_residual = 0.0;
    bool diffs_strictly_decreasing = false;

    friend bool operator==(const ConvergenceSummary&, const ConvergenceSummary&) = default;
};

struct SweepSummary {
    std::vector<numerics::SweepRecord> records;
    double cond_ratio = 1.0;
    double sigma_drop = 1.0;
    bool sigma_nonincreasing = true;
    bool any_singular = false;

    friend bool operator==(const SweepSummary&, const SweepSummary&) = default;
};

struct SpectrumSummary {
    double tau = 0.0;
    int n = 0;
    std::size_t count = 0;
    /// Share of eigenvalues within thresholds.spectrum_distance of the lens.
    double fraction_near_lens = 0.0;
    double max_distance = 0.0;
    std::vector<complex> eigenvalues;

    friend bool operator==(const SpectrumSummary&, const SpectrumSummary&) = default;
};

struct ReportDocument {
    std::string mode;
    std::string version = FINSEC_VERSION;
    std::uint64_t seed = 0;
    int threads = 1;
    Thresholds thresholds;
    Config config;
    std::optional<StabilityReport> stability;
    std::optional<SweepSummary> sweep;
    std::optional<ConvergenceSummary> convergence;
    std::optional<SpectrumSummary> spectrum;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

SweepSummary summarize(const numerics::SweepResult& r);
ConvergenceSummary summarize(const numerics::ConvergenceStudy& s);

std::string serialize_report(const ReportDocument& doc);
/// Throws ConfigError with the offending path.
ReportDocument parse_report(const std::string& text);

/// Plain-text summary for the terminal.
std::string human_summary(const ReportDocument& doc);

}  // namespace finsec
