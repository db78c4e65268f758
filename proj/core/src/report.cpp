#include "finsec/report.hpp"

#include "json_util.hpp"

#include <cstdio>
#include <sstream>

namespace finsec {

using namespace detail;

namespace {

template <class E, std::size_t N>
E enum_from(const json& j, const std::string& path, const E (&all)[N]) {
    const auto s = get_string(j, path);
    for (E e : all)
        if (s == to_string(e)) return e;
    throw ConfigError(path, "unknown value '" + s + "'");
}

constexpr Condition kConditions[] = {Condition::a, Condition::b, Condition::c};
constexpr Verdict kVerdicts[] = {Verdict::stable, Verdict::stable_numeric, Verdict::unstable, Verdict::inconclusive};
constexpr Method kMethods[] = {Method::exact, Method::grid, Method::numeric};

const char* strategy_name(FiberStrategy s) { return s == FiberStrategy::product ? "product" : "trajectory"; }

const json& at(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw ConfigError(path + "/" + key, "missing key");
    return j[key];
}

json encode_record(const ConditionRecord& r) {
    json j{{"condition", to_string(r.condition)},
           {"checkpoint", r.checkpoint},
           {"passed", r.passed},
           {"decided", r.decided},
           {"margin", encode(r.margin)},
           {"method", to_string(r.method)},
           {"detail", r.detail}};
    if (r.fiber) {
        json f = json::object();
        for (const auto& [id, v] : *r.fiber) f[id] = encode(v);
        j["fiber"] = f;
    }
    if (r.witness_x) j["witness_x"] = encode(*r.witness_x);
    if (r.eta) j["eta"] = encode(*r.eta);
    return j;
}

ConditionRecord parse_record(const json& j, const std::string& path) {
    allow_keys(j, path,
               {"condition", "checkpoint", "passed", "decided", "margin", "method", "detail", "fiber", "witness_x", "eta"});
    ConditionRecord r;
    r.condition = enum_from(at(j, "condition", path), path + "/condition", kConditions);
    r.checkpoint = get_string(at(j, "checkpoint", path), path + "/checkpoint");
    r.passed = get_bool(at(j, "passed", path), path + "/passed");
    r.decided = get_bool(at(j, "decided", path), path + "/decided");
    r.margin = get_double(at(j, "margin", path), path + "/margin");
    r.method = enum_from(at(j, "method", path), path + "/method", kMethods);
    r.detail = get_string(at(j, "detail", path), path + "/detail");
    if (j.contains("fiber")) {
        expect_object(j["fiber"], path + "/fiber");
        FiberAssignment f;
        for (const auto& [id, v] : j["fiber"].items()) f[id] = get_complex(v, path + "/fiber/" + id);
        r.fiber = std::move(f);
    }
    if (j.contains("witness_x")) r.witness_x = get_complex(j["witness_x"], path + "/witness_x");
    if (j.contains("eta")) r.eta = get_double(j["eta"], path + "/eta");
    return r;
}

json encode_stability(const StabilityReport& s) {
    json recs = json::array();
    for (const auto& r : s.records) recs.push_back(encode_record(r));
    return {{"verdict", to_string(s.verdict)},
            {"verdict_text", s.verdict_text()},
            {"p", encode(s.p)},
            {"strategy", strategy_name(s.strategy)},
            {"fsm", s.fsm},
            {"records", recs}};
}

StabilityReport parse_stability(const json& j, const std::string& path) {
    allow_keys(j, path, {"verdict", "verdict_text", "p", "strategy", "fsm", "records"});
    StabilityReport s;
    s.verdict = enum_from(at(j, "verdict", path), path + "/verdict", kVerdicts);
    s.p = get_double(at(j, "p", path), path + "/p");
    const auto strat = get_string(at(j, "strategy", path), path + "/strategy");
    if (strat != "product" && strat != "trajectory") throw ConfigError(path + "/strategy", "unknown strategy");
    s.strategy = strat == "product" ? FiberStrategy::product : FiberStrategy::trajectory;
    s.fsm = get_bool(at(j, "fsm", path), path + "/fsm");
    std::size_t i = 0;
    for (const auto& r : array_at(at(j, "records", path), path + "/records"))
        s.records.push_back(parse_record(r, path + "/records/" + std::to_string(i++)));
    return s;
}

json encode_sweep(const SweepSummary& s) {
    json recs = json::array();
    for (const auto& r : s.records)
        recs.push_back({{"tau", encode(r.tau)},
                        {"n", r.n},
                        {"sigma_min", encode(r.sigma_min)},
                        {"cond2", encode(r.cond2)},
                        {"condp", encode(r.condp)},
                        {"singular", r.singular}});
    return {{"cond_ratio", encode(s.cond_ratio)},
            {"sigma_drop", encode(s.sigma_drop)},
            {"sigma_nonincreasing", s.sigma_nonincreasing},
            {"any_singular", s.any_singular},
            {"records", recs}};
}

SweepSummary parse_sweep(const json& j, const std::string& path) {
    allow_keys(j, path, {"cond_ratio", "sigma_drop", "sigma_nonincreasing", "any_singular", "records"});
    SweepSummary s;
    s.cond_ratio = get_double(at(j, "cond_ratio", path), path + "/cond_ratio");
    s.sigma_drop = get_double(at(j, "sigma_drop", path), path + "/sigma_drop");
    s.sigma_nonincreasing = get_bool(at(j, "sigma_nonincreasing", path), path + "/sigma_nonincreasing");
    s.any_singular = get_bool(at(j, "any_singular", path), path + "/any_singular");
    std::size_t i = 0;
    for (const auto& r : array_at(at(j, "records", path), path + "/records")) {
        const std::string rp = path + "/records/" + std::to_string(i++);
        allow_keys(r, rp, {"tau", "n", "sigma_min", "cond2", "condp", "singular"});
        numerics::SweepRecord x;
        x.tau = get_double(at(r, "tau", rp), rp + "/tau");
        x.n = static_cast<int>(get_int(at(r, "n", rp), rp + "/n"));
        x.sigma_min = get_double(at(r, "sigma_min", rp), rp + "/sigma_min");
        x.cond2 = get_double(at(r, "cond2", rp), rp + "/cond2");
        x.condp = get_double(at(r, "condp", rp), rp + "/condp");
        x.singular = get_bool(at(r, "singular", rp), rp + "/singular");
        s.records.push_back(x);
    }
    return s;
}

json encode_convergence(const ConvergenceSummary& c) {
    json recs = json::array();
    for (const auto& r : c.records)
        recs.push_back({{"tau", encode(r.tau)},
                        {"diff_norm", r.diff_norm ? encode(*r.diff_norm) : json(nullptr)},
                        {"residual", encode(r.residual)}});
    return {{"grid_tau", encode(c.grid_tau)},
            {"n", c.n},
            {"singular", c.singular},
            {"final_residual", encode(c.final_residual)},
            {"diffs_strictly_decreasing", c.diffs_strictly_decreasing},
            {"records", recs}};
}

ConvergenceSummary parse_convergence(const json& j, const std::string& path) {
    allow_keys(j, path, {"grid_tau", "n", "singular", "final_residual", "diffs_strictly_decreasing", "records"});
    ConvergenceSummary c;
    c.grid_tau = get_double(at(j, "grid_tau", path), path + "/grid_tau");
    c.n = static_cast<int>(get_int(at(j, "n", path), path + "/n"));
    c.singular = get_bool(at(j, "singular", path), path + "/singular");
    c.final_residual = get_double(at(j, "final_residual", path), path + "/final_residual");
    c.diffs_strictly_decreasing =
        get_bool(at(j, "diffs_strictly_decreasing", path), path + "/diffs_strictly_decreasing");
    std::size_t i = 0;
    for (const auto& r : array_at(at(j, "records", path), path + "/records")) {
        const std::string rp = path + "/records/" + std::to_string(i++);
        allow_keys(r, rp, {"tau", "diff_norm", "residual"});
        numerics::ConvergenceRecord x;
        x.tau = get_double(at(r, "tau", rp), rp + "/tau");
        const auto& d = at(r, "diff_norm", rp);
        if (!d.is_null()) x.diff_norm = get_double(d, rp + "/diff_norm");
        x.residual = get_double(at(r, "residual", rp), rp + "/residual");
        c.records.push_back(x);
    }
    return c;
}

json encode_spectrum(const SpectrumSummary& s) {
    return {{"tau", encode(s.tau)},
            {"n", s.n},
            {"count", s.count},
            {"fraction_near_lens", encode(s.fraction_near_lens)},
            {"max_distance", encode(s.max_distance)},
            {"eigenvalues", encode(s.eigenvalues)}};
}

SpectrumSummary parse_spectrum(const json& j, const std::string& path) {
    allow_keys(j, path, {"tau", "n", "count", "fraction_near_lens", "max_distance", "eigenvalues"});
    SpectrumSummary s;
    s.tau = get_double(at(j, "tau", path), path + "/tau");
    s.n = static_cast<int>(get_int(at(j, "n", path), path + "/n"));
    s.count = static_cast<std::size_t>(get_int(at(j, "count", path), path + "/count"));
    s.fraction_near_lens = get_double(at(j, "fraction_near_lens", path), path + "/fraction_near_lens");
    s.max_distance = get_double(at(j, "max_distance", path), path + "/max_distance");
    s.eigenvalues = get_complexes(at(j, "eigenvalues", path), path + "/eigenvalues");
    return s;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

}  // namespace

SweepSummary summarize(const numerics::SweepResult& r) {
    return {r.records, r.cond_ratio, r.sigma_drop, r.sigma_nonincreasing, r.any_singular};
}

ConvergenceSummary summarize(const numerics::ConvergenceStudy& s) {
    return {s.records, s.grid.tau, s.grid.n, s.singular, s.final_residual, s.diffs_strictly_decreasing};
}

std::string serialize_report(const ReportDocument& d) {
    json j;
    j["mode"] = d.mode;
    j["environment"] = {{"version", d.version},
                        {"seed", d.seed},
                        {"threads", d.threads},
                        {"thresholds",
                         {{"cond_ratio", encode(d.thresholds.cond_ratio)},
                          {"sigma_drop", encode(d.thresholds.sigma_drop)},
                          {"spectrum_distance", encode(d.thresholds.spectrum_distance)}}}};
    j["config"] = json::parse(serialize_config(d.config));
    if (d.stability) j["stability"] = encode_stability(*d.stability);
    if (d.sweep) j["sweep"] = encode_sweep(*d.sweep);
    if (d.convergence) j["convergence"] = encode_convergence(*d.convergence);
    if (d.spectrum) j["spectrum"] = encode_spectrum(*d.spectrum);
    return j.dump(2);
}

ReportDocument parse_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("/", std::string("malformed JSON: ") + e.what());
    }
    allow_keys(j, "", {"mode", "environment", "config", "stability", "sweep", "convergence", "spectrum"});
    ReportDocument d;
    d.mode = get_string(at(j, "mode", ""), "/mode");
    const auto& env = at(j, "environment", "");
    allow_keys(env, "/environment", {"version", "seed", "threads", "thresholds"});
    d.version = get_string(at(env, "version", "/environment"), "/environment/version");
    d.seed = static_cast<std::uint64_t>(get_int(at(env, "seed", "/environment"), "/environment/seed"));
    d.threads = static_cast<int>(get_int(at(env, "threads", "/environment"), "/environment/threads"));
    const auto& th = at(env, "thresholds", "/environment");
    const std::string tp = "/environment/thresholds";
    allow_keys(th, tp, {"cond_ratio", "sigma_drop", "spectrum_distance"});
    d.thresholds.cond_ratio = get_double(at(th, "cond_ratio", tp), tp + "/cond_ratio");
    d.thresholds.sigma_drop = get_double(at(th, "sigma_drop", tp), tp + "/sigma_drop");
    d.thresholds.spectrum_distance = get_double(at(th, "spectrum_distance", tp), tp + "/spectrum_distance");
    d.config = parse_config(at(j, "config", "").dump());
    if (j.contains("stability")) d.stability = parse_stability(j["stability"], "/stability");
    if (j.contains("sweep")) d.sweep = parse_sweep(j["sweep"], "/sweep");
    if (j.contains("convergence")) d.convergence = parse_convergence(j["convergence"], "/convergence");
    if (j.contains("spectrum")) d.spectrum = parse_spectrum(j["spectrum"], "/spectrum");
    return d;
}

std::string human_summary(const ReportDocument& d) {
    std::ostringstream os;
    os << "finsec " << d.version << "  mode=" << d.mode << "  p=" << fmt(d.config.p) << "  seed=" << d.seed << '\n';
    if (d.stability) {
        const auto& s = *d.stability;
        os << "verdict: " << s.verdict_text() << '\n';
        for (const auto& r : s.records) {
            os << "  (" << to_string(r.condition) << ") " << r.checkpoint << ": " << (r.passed ? "pass" : "FAIL")
               << (r.decided ? "" : " (undecided)") << "  [" << to_string(r.method) << ", margin " << fmt(r.margin)
               << "]";
            if (!r.detail.empty()) os << "  " << r.detail;
            os << '\n';
        }
        if (const auto f = s.witness()) {
            os << "witness: condition (" << to_string(f->condition) << ") at " << f->checkpoint;
            if (f->eta) os << ", eta=" << fmt(*f->eta);
            if (f->witness_x) os << ", x=" << fmt(f->witness_x->real()) << (f->witness_x->imag() >= 0 ? "+" : "")
                                 << fmt(f->witness_x->imag()) << "i";
            if (f->fiber)
                for (const auto& [id, v] : *f->fiber) os << ", " << id << "=" << fmt(v.real());
            os << '\n';
        }
    }
    if (d.sweep) {
        os << "condition sweep: cond ratio " << fmt(d.sweep->cond_ratio) << ", sigma_min drop "
           << fmt(d.sweep->sigma_drop) << (d.sweep->any_singular ? ", singular matrix encountered" : "") << '\n';
        for (const auto& r : d.sweep->records)
            os << "  tau=" << fmt(r.tau) << " sigma_min=" << fmt(r.sigma_min) << " cond2=" << fmt(r.cond2)
               << " condp=" << fmt(r.condp) << (r.singular ? " SINGULAR" : "") << '\n';
    }
    if (d.convergence) {
        os << "finite sections: final residual " << fmt(d.convergence->final_residual)
           << (d.convergence->diffs_strictly_decreasing ? ", differences decreasing" : ", differences not decreasing")
           << (d.convergence->singular ? ", singular section encountered" : "") << '\n';
    }
    if (d.spectrum) {
        os << "spectrum: " << d.spectrum->count << " eigenvalues, " << fmt(100.0 * d.spectrum->fraction_near_lens)
           << "% within " << fmt(d.thresholds.spectrum_distance) << " of the lens\n";
    }
    return os.str();
}

}  // namespace finsec
