#include "finsec/run.hpp"

#include "finsec/errors.hpp"
#include "finsec/plot.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace finsec {

namespace {

namespace fs = std::filesystem;

int verdict_exit(Verdict v) {
    return v == Verdict::stable || v == Verdict::unstable ? kExitVerdict : kExitInconclusive;
}

const OperatorExpr& require_concrete(const Model& m, const std::string& mode) {
    if (!m.expr.is_concrete())
        throw ConfigError("/expression", mode + " mode needs an operator; remove projseq from the expression");
    return m.expr;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
    if (!os) throw Error("cannot write " + path.string());
}

}  // namespace

RunResult run(const Config& cfg_in, const RunOptions& opt) {
    RunResult res;
    try {
        Config cfg = cfg_in;
        if (opt.seed) cfg.seed = *opt.seed;
        if (opt.out) cfg.output = opt.out->string();
        const int threads = std::max(1, opt.threads);
        const Model model = build_model(cfg);

        ReportDocument doc;
        doc.mode = cfg.mode;
        doc.seed = cfg.seed;
        doc.threads = threads;
        doc.thresholds = cfg.thresholds;
        doc.config = cfg;

        const AnalyzerConfig acfg = analyzer_config(cfg, threads);
        const auto policy = grid_policy(cfg);
        std::vector<PlotPayload> plots;
        std::vector<std::string> plot_names;
        int code = kExitVerdict;

        if (cfg.mode == "analyze") {
            doc.stability = analyze_stability(model.expr, acfg);
            code = verdict_exit(doc.stability->verdict);
            plots.push_back(LensPlot{cfg.p});
            plot_names.push_back("lens");
        } else if (cfg.mode == "fsm") {
            doc.stability = fsm_check(require_concrete(model, cfg.mode), acfg);
            code = verdict_exit(doc.stability->verdict);
            plots.push_back(LensPlot{cfg.p});
            plot_names.push_back("lens");
        } else if (cfg.mode == "simulate") {
            const auto& a = require_concrete(model, cfg.mode);
            doc.sweep = summarize(numerics::cond_sweep(a, cfg.tau_list, cfg.p, policy, cfg.seed, threads));
            const ScalarExpression rhs(cfg.rhs);
            doc.convergence = summarize(numerics::solve_fsm(
                a, [&](double t) { return complex{rhs(t)}; }, cfg.tau_list, cfg.p, policy));
            plots.push_back(SweepPlot{doc.sweep->records});
            plot_names.push_back("sweep");
            plots.push_back(ConvergencePlot{doc.convergence->records});
            plot_names.push_back("convergence");
        } else if (cfg.mode == "spectrum") {
            const auto& a = require_concrete(model, cfg.mode);
            const numerics::Grid g(cfg.spectrum_tau, cfg.grid.n, cfg.grid.padding);
            SpectrumSummary s;
            s.tau = cfg.spectrum_tau;
            s.n = cfg.grid.n;
            s.eigenvalues = numerics::empirical_spectrum(numerics::discretize(a, g));
            s.count = s.eigenvalues.size();
            std::size_t near = 0;
            for (auto z : s.eigenvalues) {
                const double d = geometry::lens_distance(cfg.p, z);
                s.max_distance = std::max(s.max_distance, d);
                if (d <= cfg.thresholds.spectrum_distance) ++near;
            }
            s.fraction_near_lens = s.count ? static_cast<double>(near) / static_cast<double>(s.count) : 0.0;
            doc.spectrum = s;
            plots.push_back(SpectrumPlot{cfg.p, s.eigenvalues});
            plot_names.push_back("spectrum");
            plots.push_back(LensPlot{cfg.p});
            plot_names.push_back("lens");
        } else {
            throw ConfigError("/mode", "unknown mode '" + cfg.mode + "'");
        }

        res.message = human_summary(doc);
        if (opt.write_files) {
            const fs::path dir = cfg.output;
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
            write_text(dir / "report.json", serialize_report(doc));
            write_text(dir / "summary.txt", res.message);
            res.artifacts.push_back(dir / "report.json");
            res.artifacts.push_back(dir / "summary.txt");
            for (std::size_t i = 0; i < plots.size(); ++i) {
                const auto written = emit_plot_data(plots[i], dir / plot_names[i]);
                res.artifacts.insert(res.artifacts.end(), written.begin(), written.end());
            }
        }
        res.report = std::move(doc);
        res.exit_code = code;
    } catch (const ConfigError& e) {
        res.exit_code = kExitInputError;
        res.message = std::string("input error: ") + e.what();
    } catch (const DomainError& e) {
        res.exit_code = kExitInputError;
        res.message = std::string("input error: ") + e.what();
    } catch (const std::exception& e) {
        res.exit_code = kExitInconclusive;
        res.message = std::string("computation failed: ") + e.what();
    }
    return res;
}

int run_cli(const std::string& mode, const fs::path& config_path, const RunOptions& opt, std::ostream& out,
            std::ostream& err) {
    std::ifstream is(config_path);
    if (!is) {
        err << "input error: cannot read config " << config_path.string() << '\n';
        return kExitInputError;
    }
    std::stringstream buf;
    buf << is.rdbuf();
    Config cfg;
    try {
        cfg = parse_config(buf.str());
        if (mode != "analyze" && mode != "fsm" && mode != "simulate" && mode != "spectrum")
            throw ConfigError("<mode>", "unknown mode '" + mode + "'");
        cfg.mode = mode;
    } catch (const Error& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    }
    const RunResult r = run(cfg, opt);
    std::ostream& dst = r.report ? out : err;
    dst << r.message;
    if (!r.message.empty() && r.message.back() != '\n') dst << '\n';
    for (const auto& a : r.artifacts) out << "wrote " << a.string() << '\n';
    return r.exit_code;
}

}  // namespace finsec
