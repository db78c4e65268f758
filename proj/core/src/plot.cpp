#include "finsec/plot.hpp"

#include "finsec/errors.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace finsec {

namespace {

namespace fs = std::filesystem;

struct Row {
    std::string id;
    double mu;
    complex z;
};

std::vector<Row> curve_rows(const std::string& id, const geometry::ArcCurve& c) {
    std::vector<Row> out;
    if (c.is_point() || c.arcs().empty()) {
        const complex z = c.arcs().empty() ? complex{0.0} : c.arcs().front().z1;
        out.push_back({id, 0.0, z});
        return out;
    }
    const auto arcs = c.arcs();
    for (std::size_t k = 0; k < arcs.size(); ++k)
        for (std::size_t i = k ? 1 : 0; i < kPlotSamplesPerArc; ++i) {
            const double mu = static_cast<double>(i) / static_cast<double>(kPlotSamplesPerArc - 1);
            out.push_back({id, static_cast<double>(k) + mu, geometry::arc_point(arcs[k], mu)});
        }
    return out;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path.string());
    os.precision(17);
    return os;
}

void finish(std::ofstream& os, const fs::path& path) {
    os.flush();
    if (!os) throw Error("write failed: " + path.string());
}

void write_rows(const fs::path& path, const std::vector<Row>& rows) {
    auto os = open_out(path);
    os << "curve_id,mu,re,im\n";
    for (const auto& r : rows) os << r.id << ',' << r.mu << ',' << r.z.real() << ',' << r.z.imag() << '\n';
    finish(os, path);
}

// Maps the complex plane onto a square canvas, y pointing up.
class Canvas {
public:
    explicit Canvas(const std::vector<complex>& pts) {
        double x0 = 0.0, x1 = 1.0, y0 = -0.5, y1 = 0.5;
        for (auto z : pts) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
            x0 = std::min(x0, z.real());
            x1 = std::max(x1, z.real());
            y0 = std::min(y0, z.imag());
            y1 = std::max(y1, z.imag());
        }
        const double span = std::max(x1 - x0, y1 - y0) * 1.1;
        cx_ = 0.5 * (x0 + x1);
        cy_ = 0.5 * (y0 + y1);
        scale_ = kSize / span;
    }

    double x(complex z) const { return kSize / 2 + (z.real() - cx_) * scale_; }
    double y(complex z) const { return kSize / 2 - (z.imag() - cy_) * scale_; }

    std::string header() const {
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
           << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
           << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        // Real and imaginary axes.
        os << "<line x1=\"0\" y1=\"" << y(0.0) << "\" x2=\"" << kSize << "\" y2=\"" << y(0.0)
           << "\" stroke=\"#ccc\"/>\n<line x1=\"" << x(0.0) << "\" y1=\"0\" x2=\"" << x(0.0) << "\" y2=\"" << kSize
           << "\" stroke=\"#ccc\"/>\n";
        return os.str();
    }

    std::string polyline(const std::vector<complex>& pts, const char* color) const {
        std::ostringstream os;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto z : pts) os << x(z) << ',' << y(z) << ' ';
        os << "\"/>\n";
        return os.str();
    }

    std::string dot(complex z, double r, const char* color) const {
        std::ostringstream os;
        os << "<circle cx=\"" << x(z) << "\" cy=\"" << y(z) << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
        return os.str();
    }

private:
    static constexpr double kSize = 480.0;
    double cx_ = 0.0, cy_ = 0.0, scale_ = 1.0;
};

std::vector<complex> points_of(const std::vector<Row>& rows) {
    std::vector<complex> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.z);
    return out;
}

void write_svg(const fs::path& path, const std::string& body) {
    auto os = open_out(path);
    os << body << "</svg>\n";
    finish(os, path);
}

fs::path with_ext(const fs::path& stem, const char* ext) {
    fs::path p = stem;
    p += ext;
    return p;
}

}  // namespace

std::vector<fs::path> emit_plot_data(const PlotPayload& payload, const fs::path& stem) {
    const fs::path csv = with_ext(stem, ".csv"), svg = with_ext(stem, ".svg");
    return std::visit(
        [&](const auto& pl) -> std::vector<fs::path> {
            using T = std::decay_t<decltype(pl)>;
            if constexpr (std::is_same_v<T, LensPlot>) {
                write_rows(csv, curve_rows("lens", geometry::LensDomain(pl.p).boundary()));
                return {csv};
            } else if constexpr (std::is_same_v<T, CurvePlot>) {
                const auto rows = curve_rows(pl.id, pl.curve);
                write_rows(csv, rows);
                auto pts = points_of(rows);
                pts.push_back(0.0);
                const Canvas cv(pts);
                std::string body = cv.header();
                if (rows.size() == 1) body += cv.dot(rows.front().z, 5.0, "#1f77b4");
                else body += cv.polyline(points_of(rows), "#1f77b4");
                // Origin marker.
                body += cv.dot(0.0, 3.5, "#d62728");
                write_svg(svg, body);
                return {csv, svg};
            } else if constexpr (std::is_same_v<T, SpectrumPlot>) {
                {
                    auto os = open_out(csv);
                    os << "re,im\n";
                    for (auto z : pl.eigenvalues) os << z.real() << ',' << z.imag() << '\n';
                    finish(os, csv);
                }
                const auto lens = points_of(curve_rows("lens", geometry::LensDomain(pl.p).boundary()));
                auto pts = lens;
                pts.insert(pts.end(), pl.eigenvalues.begin(), pl.eigenvalues.end());
                const Canvas cv(pts);
                std::string body = cv.header() + cv.polyline(lens, "#2ca02c");
                for (auto z : pl.eigenvalues)
                    if (std::isfinite(z.real()) && std::isfinite(z.imag())) body += cv.dot(z, 1.8, "#1f77b4");
                write_svg(svg, body);
                return {csv, svg};
            } else if constexpr (std::is_same_v<T, SweepPlot>) {
                auto os = open_out(csv);
                os << "tau,n,sigma_min,cond2,condp\n";
                for (const auto& r : pl.records)
                    os << r.tau << ',' << r.n << ',' << r.sigma_min << ',' << r.cond2 << ',' << r.condp << '\n';
                finish(os, csv);
                return {csv};
            } else {
                auto os = open_out(csv);
                os << "tau,diff_norm,residual\n";
                for (const auto& r : pl.records) {
                    os << r.tau << ',';
                    if (r.diff_norm) os << *r.diff_norm;
                    os << ',' << r.residual << '\n';
                }
                finish(os, csv);
                return {csv};
            }
        },
        payload);
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path.string());
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) out.push_back(cell);
        if (!line.empty() && line.back() == ',') out.emplace_back();
        return out;
    };
    CsvTable t;
    std::string line;
    if (!std::getline(is, line)) throw Error(path.string() + ": empty file");
    t.header = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto row = split(line);
        if (row.size() != t.header.size())
            throw Error(path.string() + ": row " + std::to_string(t.rows.size() + 1) + " has " +
                        std::to_string(row.size()) + " cells");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace finsec
