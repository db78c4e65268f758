#pragma once

// Plot data files. Every payload is written as CSV (comma separated,
// header row); lens/spectrum overlays and arc curves also get an SVG.

#include "finsec/geometry.hpp"
#include "finsec/numerics/sweep.hpp"

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace finsec {

/// Boundary of L_p as a closed polyline; CSV columns curve_id, mu, re, im.
struct LensPlot {
    double p = 2.0;
};

/// A closed arc curve such as the one completing jump values; SVG marks the origin.
struct CurvePlot {
    std::string id;
    geometry::ArcCurve curve;
};

/// Eigenvalue cloud; CSV columns re, im; SVG overlays the lens of exponent p.
struct SpectrumPlot {
    double p = 2.0;
    std::vector<complex> eigenvalues;
};

/// CSV columns tau, n, sigma_min, cond2, condp.
struct SweepPlot {
    std::vector<numerics::SweepRecord> records;
};

/// CSV columns tau, diff_norm, residual (diff_norm empty for the first tau).
struct ConvergencePlot {
    std::vector<numerics::ConvergenceRecord> records;
};

using PlotPayload = std::variant<LensPlot, CurvePlot, SpectrumPlot, SweepPlot, ConvergencePlot>;

/// Samples per arc used for lens and curve polylines.
inline constexpr std::size_t kPlotSamplesPerArc = 129;

/// Writes `stem`.csv and, where applicable, `stem`.svg. Returns the written paths.
/// Throws Error on I/O failure.
std::vector<std::filesystem::path> emit_plot_data(const PlotPayload& payload, const std::filesystem::path& stem);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a file written by emit_plot_data. Throws Error on ragged rows.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace finsec
