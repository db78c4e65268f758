#include "finsec/config.hpp"

#include "json_util.hpp"

#include <set>

namespace finsec {

using namespace detail;

namespace {

ClusterSet parse_cluster(const json& j, const std::string& path) {
    expect_object(j, path);
    if (!j.contains("kind")) throw ConfigError(path + "/kind", "missing cluster kind");
    const auto kind = get_string(j["kind"], path + "/kind");
    if (kind == "point") {
        allow_keys(j, path, {"kind", "value"});
        return ClusterPoint{j.contains("value") ? get_complex(j["value"], path + "/value") : complex{0.0}};
    }
    if (kind == "circle") {
        allow_keys(j, path, {"kind", "center", "radius"});
        ClusterCircle c;
        if (j.contains("center")) c.center = get_complex(j["center"], path + "/center");
        if (j.contains("radius")) c.radius = get_double(j["radius"], path + "/radius");
        return c;
    }
    if (kind == "finite") {
        allow_keys(j, path, {"kind", "values"});
        if (!j.contains("values")) throw ConfigError(path + "/values", "missing cluster values");
        return ClusterFinite{get_complexes(j["values"], path + "/values")};
    }
    if (kind == "sampled") {
        allow_keys(j, path, {"kind", "tau0", "rho", "steps"});
        ClusterSampled s;
        if (j.contains("tau0")) s.tau0 = get_double(j["tau0"], path + "/tau0");
        if (j.contains("rho")) s.rho = get_double(j["rho"], path + "/rho");
        if (j.contains("steps")) s.steps = static_cast<int>(get_int(j["steps"], path + "/steps"));
        return s;
    }
    throw ConfigError(path + "/kind", "unknown cluster kind '" + kind + "'");
}

json encode_cluster(const ClusterSet& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ClusterPoint>) return {{"kind", "point"}, {"value", encode(v.c)}};
            else if constexpr (std::is_same_v<T, ClusterCircle>)
                return {{"kind", "circle"}, {"center", encode(v.center)}, {"radius", encode(v.radius)}};
            else if constexpr (std::is_same_v<T, ClusterFinite>)
                return {{"kind", "finite"}, {"values", encode(v.points)}};
            else
                return {{"kind", "sampled"}, {"tau0", encode(v.tau0)}, {"rho", encode(v.rho)}, {"steps", v.steps}};
        },
        c);
}

GeneratorSpec parse_generator(const json& j, const std::string& path) {
    allow_keys(j, path, {"id", "kind", "k", "num", "den", "width", "psi", "cluster"});
    GeneratorSpec g;
    if (!j.contains("id")) throw ConfigError(path + "/id", "missing generator id");
    g.id = get_string(j["id"], path + "/id");
    if (j.contains("kind")) g.kind = get_string(j["kind"], path + "/kind");
    if (g.kind == "gk") {
        allow_keys(j, path, {"id", "kind", "k"});
        if (j.contains("k")) g.k = static_cast<int>(get_int(j["k"], path + "/k"));
    } else if (g.kind == "rational") {
        allow_keys(j, path, {"id", "kind", "num", "den"});
        if (!j.contains("num") || !j.contains("den")) throw ConfigError(path, "rational generator needs num and den");
        g.num = get_doubles(j["num"], path + "/num");
        g.den = get_doubles(j["den"], path + "/den");
    } else if (g.kind == "gaussian") {
        allow_keys(j, path, {"id", "kind", "width"});
        if (j.contains("width")) g.width = get_double(j["width"], path + "/width");
    } else if (g.kind == "phase") {
        if (!j.contains("psi")) throw ConfigError(path + "/psi", "phase generator needs psi");
        g.psi = get_string(j["psi"], path + "/psi");
        if (j.contains("cluster")) g.cluster = parse_cluster(j["cluster"], path + "/cluster");
    } else {
        throw ConfigError(path + "/kind", "unknown generator kind '" + g.kind + "'");
    }
    return g;
}

json encode_generator(const GeneratorSpec& g) {
    json j{{"id", g.id}, {"kind", g.kind}};
    if (g.kind == "gk") j["k"] = g.k;
    else if (g.kind == "rational") {
        j["num"] = encode(g.num);
        j["den"] = encode(g.den);
    } else if (g.kind == "gaussian") j["width"] = encode(g.width);
    else if (g.kind == "phase") {
        j["psi"] = g.psi;
        j["cluster"] = encode_cluster(g.cluster);
    }
    return j;
}

SymbolSpec parse_symbol(const std::string& name, const json& j, const std::string& path) {
    SymbolSpec s;
    s.name = name;
    // Shorthand: a bare number or [re, im] is a constant symbol.
    if (j.is_number() || j.is_array()) {
        s.terms.push_back(TermSpec{{}, {get_complex(j, path)}, {}});
        return s;
    }
    allow_keys(j, path, {"terms", "breakpoints", "values", "factors"});
    auto term = [](const json& t, const std::string& tp) {
        allow_keys(t, tp, {"breakpoints", "values", "factors"});
        TermSpec ts;
        if (t.contains("breakpoints")) ts.breakpoints = get_doubles(t["breakpoints"], tp + "/breakpoints");
        if (t.contains("values")) ts.values = get_complexes(t["values"], tp + "/values");
        if (t.contains("factors")) {
            std::size_t i = 0;
            for (const auto& f : array_at(t["factors"], tp + "/factors"))
                ts.factors.push_back(get_string(f, tp + "/factors/" + std::to_string(i++)));
        }
        return ts;
    };
    if (j.contains("terms")) {
        if (j.contains("breakpoints") || j.contains("values") || j.contains("factors"))
            throw ConfigError(path, "use either terms or a single breakpoints/values/factors term");
        std::size_t i = 0;
        for (const auto& t : array_at(j["terms"], path + "/terms"))
            s.terms.push_back(term(t, path + "/terms/" + std::to_string(i++)));
    } else {
        s.terms.push_back(term(j, path));
    }
    return s;
}

json encode_symbol(const SymbolSpec& s) {
    json terms = json::array();
    for (const auto& t : s.terms)
        terms.push_back({{"breakpoints", encode(t.breakpoints)}, {"values", encode(t.values)}, {"factors", t.factors}});
    return {{"terms", terms}};
}

StepSpec parse_step(const json& j, const std::string& path) {
    allow_keys(j, path, {"breakpoints", "values"});
    StepSpec s;
    if (j.contains("breakpoints")) s.breakpoints = get_doubles(j["breakpoints"], path + "/breakpoints");
    if (!j.contains("values")) throw ConfigError(path + "/values", "missing step values");
    s.values = get_complexes(j["values"], path + "/values");
    return s;
}

ExprNode parse_expr(const json& j, const std::string& path) {
    ExprNode e;
    if (j.is_string()) {
        e.kind = j.get<std::string>();
        if (e.kind != "ident" && e.kind != "projseq")
            throw ConfigError(path, "only ident and projseq may be given as bare strings");
        return e;
    }
    expect_object(j, path);
    if (!j.contains("kind")) throw ConfigError(path + "/kind", "missing expression kind");
    e.kind = get_string(j["kind"], path + "/kind");
    auto children = [&](const char* key) {
        if (!j.contains(key)) throw ConfigError(path + "/" + key, "missing operands");
        std::size_t i = 0;
        for (const auto& c : array_at(j[key], path + "/" + key))
            e.children.push_back(parse_expr(c, path + "/" + key + "/" + std::to_string(i++)));
        if (e.children.empty()) throw ConfigError(path + "/" + key, "needs at least one operand");
    };
    if (e.kind == "ident" || e.kind == "projseq") {
        allow_keys(j, path, {"kind"});
    } else if (e.kind == "mult") {
        allow_keys(j, path, {"kind", "step", "symbol"});
        if (j.contains("step") == j.contains("symbol")) throw ConfigError(path, "mult needs exactly one of step, symbol");
        if (j.contains("step")) e.step = parse_step(j["step"], path + "/step");
        else e.symbol = get_string(j["symbol"], path + "/symbol");
    } else if (e.kind == "conv") {
        allow_keys(j, path, {"kind", "symbol"});
        if (!j.contains("symbol")) throw ConfigError(path + "/symbol", "conv needs a symbol");
        e.symbol = get_string(j["symbol"], path + "/symbol");
    } else if (e.kind == "scale") {
        allow_keys(j, path, {"kind", "value", "child"});
        if (!j.contains("value") || !j.contains("child")) throw ConfigError(path, "scale needs value and child");
        e.value = get_complex(j["value"], path + "/value");
        e.children.push_back(parse_expr(j["child"], path + "/child"));
    } else if (e.kind == "sum" || e.kind == "prod") {
        allow_keys(j, path, {"kind", "terms", "factors"});
        children(e.kind == "sum" ? "terms" : "factors");
    } else {
        throw ConfigError(path + "/kind", "unknown expression kind '" + e.kind + "'");
    }
    return e;
}

json encode_expr(const ExprNode& e) {
    json j{{"kind", e.kind}};
    if (e.kind == "mult") {
        if (e.step) j["step"] = {{"breakpoints", encode(e.step->breakpoints)}, {"values", encode(e.step->values)}};
        else j["symbol"] = e.symbol;
    } else if (e.kind == "conv") {
        j["symbol"] = e.symbol;
    } else if (e.kind == "scale") {
        j["value"] = encode(e.value);
        j["child"] = encode_expr(e.children.front());
    } else if (e.kind == "sum" || e.kind == "prod") {
        json a = json::array();
        for (const auto& c : e.children) a.push_back(encode_expr(c));
        j[e.kind == "sum" ? "terms" : "factors"] = a;
    }
    return j;
}

const char* strategy_name(FiberStrategy s) { return s == FiberStrategy::product ? "product" : "trajectory"; }

OperatorExpr build_expr(const ExprNode& e, const Model& m, const std::string& path) {
    auto lookup = [&](const std::string& name) -> const PCSOSymbol& {
        const auto it = m.symbols.find(name);
        if (it == m.symbols.end()) throw ConfigError(path + "/symbol", "undefined symbol '" + name + "'");
        return it->second;
    };
    try {
        if (e.kind == "ident") return OperatorExpr::ident();
        if (e.kind == "projseq") return OperatorExpr::projseq();
        if (e.kind == "mult") {
            if (e.step) return OperatorExpr::mult(StepFunction(e.step->breakpoints, e.step->values));
            const auto& s = lookup(e.symbol);
            if (!s.is_pure_pc()) throw ConfigError(path + "/symbol", "multiplier '" + e.symbol + "' is not a step function");
            return OperatorExpr::mult(s.as_step(), e.symbol);
        }
        if (e.kind == "conv") return OperatorExpr::conv(lookup(e.symbol), e.symbol);
        if (e.kind == "scale") return OperatorExpr::scale(e.value, build_expr(e.children.front(), m, path + "/child"));
        std::vector<OperatorExpr> kids;
        const std::string key = e.kind == "sum" ? "/terms/" : "/factors/";
        for (std::size_t i = 0; i < e.children.size(); ++i)
            kids.push_back(build_expr(e.children[i], m, path + key + std::to_string(i)));
        return e.kind == "sum" ? OperatorExpr::sum(std::move(kids)) : OperatorExpr::prod(std::move(kids));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& err) {
        throw ConfigError(path, err.what());
    }
}

}  // namespace

Config parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("/", std::string("malformed JSON: ") + e.what());
    }
    allow_keys(j, "", {"p", "mode", "generators", "symbols", "expression", "fiber", "tau_list", "grid", "spectrum",
                       "tolerances", "thresholds", "output", "rhs", "seed"});
    Config c;
    if (j.contains("p")) c.p = get_double(j["p"], "/p");
    if (!(c.p > 1.0) || !std::isfinite(c.p)) throw ConfigError("/p", "p must lie in (1, inf)");
    if (j.contains("mode")) c.mode = get_string(j["mode"], "/mode");
    if (c.mode != "analyze" && c.mode != "fsm" && c.mode != "simulate" && c.mode != "spectrum")
        throw ConfigError("/mode", "unknown mode '" + c.mode + "'");

    if (j.contains("generators")) {
        std::size_t i = 0;
        for (const auto& g : array_at(j["generators"], "/generators"))
            c.generators.push_back(parse_generator(g, "/generators/" + std::to_string(i++)));
    }
    if (j.contains("symbols")) {
        expect_object(j["symbols"], "/symbols");
        for (const auto& [name, s] : j["symbols"].items()) c.symbols.push_back(parse_symbol(name, s, "/symbols/" + name));
    }
    if (!j.contains("expression")) throw ConfigError("/expression", "missing expression");
    c.expression = parse_expr(j["expression"], "/expression");

    if (j.contains("fiber")) {
        const auto& f = j["fiber"];
        allow_keys(f, "/fiber", {"strategy", "resolution", "tau0", "rho"});
        if (f.contains("strategy")) {
            const auto s = get_string(f["strategy"], "/fiber/strategy");
            if (s == "product") c.fiber.strategy = FiberStrategy::product;
            else if (s == "trajectory") c.fiber.strategy = FiberStrategy::trajectory;
            else throw ConfigError("/fiber/strategy", "expected product or trajectory");
        }
        if (f.contains("resolution")) c.fiber.resolution = static_cast<int>(get_int(f["resolution"], "/fiber/resolution"));
        if (c.fiber.resolution < 1) throw ConfigError("/fiber/resolution", "must be at least 1");
        if (f.contains("tau0")) c.fiber.tau0 = get_double(f["tau0"], "/fiber/tau0");
        if (f.contains("rho")) c.fiber.rho = get_double(f["rho"], "/fiber/rho");
    }
    if (j.contains("tau_list")) c.tau_list = get_doubles(j["tau_list"], "/tau_list");
    if (c.tau_list.empty()) throw ConfigError("/tau_list", "needs at least one value");
    for (std::size_t i = 0; i < c.tau_list.size(); ++i)
        if (!(c.tau_list[i] > 0.0) || (i && !(c.tau_list[i] > c.tau_list[i - 1])))
            throw ConfigError("/tau_list/" + std::to_string(i), "tau values must be positive and strictly increasing");

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        allow_keys(g, "/grid", {"n", "padding", "tau_ratio"});
        if (g.contains("n")) c.grid.n = static_cast<int>(get_int(g["n"], "/grid/n"));
        if (g.contains("padding")) c.grid.padding = static_cast<int>(get_int(g["padding"], "/grid/padding"));
        if (g.contains("tau_ratio")) c.grid.tau_ratio = get_double(g["tau_ratio"], "/grid/tau_ratio");
    }
    if (c.grid.n < 8 || c.grid.n % 2) throw ConfigError("/grid/n", "must be even and at least 8");
    if (c.grid.padding < 1) throw ConfigError("/grid/padding", "must be at least 1");
    if (!(c.grid.tau_ratio > 1.0)) throw ConfigError("/grid/tau_ratio", "must exceed 1");

    if (j.contains("spectrum")) {
        allow_keys(j["spectrum"], "/spectrum", {"tau"});
        if (j["spectrum"].contains("tau")) c.spectrum_tau = get_double(j["spectrum"]["tau"], "/spectrum/tau");
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        allow_keys(t, "/tolerances", {"zero", "cluster", "lens_rel"});
        if (t.contains("zero")) c.tolerances.zero = get_double(t["zero"], "/tolerances/zero");
        if (t.contains("cluster")) c.tolerances.cluster = get_double(t["cluster"], "/tolerances/cluster");
        if (t.contains("lens_rel")) c.tolerances.lens_rel = get_double(t["lens_rel"], "/tolerances/lens_rel");
    }
    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        allow_keys(t, "/thresholds", {"cond_ratio", "sigma_drop", "spectrum_distance"});
        if (t.contains("cond_ratio")) c.thresholds.cond_ratio = get_double(t["cond_ratio"], "/thresholds/cond_ratio");
        if (t.contains("sigma_drop")) c.thresholds.sigma_drop = get_double(t["sigma_drop"], "/thresholds/sigma_drop");
        if (t.contains("spectrum_distance"))
            c.thresholds.spectrum_distance = get_double(t["spectrum_distance"], "/thresholds/spectrum_distance");
    }
    if (j.contains("output")) c.output = get_string(j["output"], "/output");
    if (j.contains("rhs")) c.rhs = get_string(j["rhs"], "/rhs");
    try {
        ScalarExpression{c.rhs};
    } catch (const Error& e) {
        throw ConfigError("/rhs", e.what());
    }
    if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(get_int(j["seed"], "/seed"));

    build_model(c);
    return c;
}

std::string serialize_config(const Config& c) {
    json j;
    j["p"] = encode(c.p);
    j["mode"] = c.mode;
    json gens = json::array();
    for (const auto& g : c.generators) gens.push_back(encode_generator(g));
    j["generators"] = gens;
    json syms = json::object();
    for (const auto& s : c.symbols) syms[s.name] = encode_symbol(s);
    j["symbols"] = syms;
    j["expression"] = encode_expr(c.expression);
    j["fiber"] = {{"strategy", strategy_name(c.fiber.strategy)},
                  {"resolution", c.fiber.resolution},
                  {"tau0", encode(c.fiber.tau0)},
                  {"rho", encode(c.fiber.rho)}};
    j["tau_list"] = encode(c.tau_list);
    j["grid"] = {{"n", c.grid.n}, {"padding", c.grid.padding}, {"tau_ratio", encode(c.grid.tau_ratio)}};
    j["spectrum"] = {{"tau", encode(c.spectrum_tau)}};
    j["tolerances"] = {{"zero", encode(c.tolerances.zero)},
                       {"cluster", encode(c.tolerances.cluster)},
                       {"lens_rel", encode(c.tolerances.lens_rel)}};
    j["thresholds"] = {{"cond_ratio", encode(c.thresholds.cond_ratio)},
                       {"sigma_drop", encode(c.thresholds.sigma_drop)},
                       {"spectrum_distance", encode(c.thresholds.spectrum_distance)}};
    j["output"] = c.output;
    j["rhs"] = c.rhs;
    j["seed"] = c.seed;
    return j.dump(2);
}

Model build_model(const Config& c) {
    Model m;
    auto table = std::make_shared<GeneratorTable>();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        const auto& g = c.generators[i];
        const std::string path = "/generators/" + std::to_string(i);
        if (!seen.insert(g.id).second) throw ConfigError(path + "/id", "duplicate generator id '" + g.id + "'");
        try {
            if (g.kind == "gk") table->add(make_gk(g.id, g.k));
            else if (g.kind == "rational") table->add(make_rational(g.id, g.num, g.den));
            else if (g.kind == "gaussian") table->add(make_gaussian(g.id, g.width));
            else if (g.kind == "phase") table->add(make_phase(g.id, g.psi, g.cluster));
            else throw ConfigError(path + "/kind", "unknown generator kind '" + g.kind + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
    }
    m.table = table;

    for (const auto& s : c.symbols) {
        const std::string path = "/symbols/" + s.name;
        std::vector<SymbolTerm> terms;
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
            const auto& t = s.terms[i];
            const std::string tp = path + "/terms/" + std::to_string(i);
            SymbolTerm st;
            try {
                st.pc = StepFunction(t.breakpoints, t.values);
            } catch (const Error& e) {
                throw ConfigError(tp, e.what());
            }
            for (std::size_t k = 0; k < t.factors.size(); ++k) {
                std::string id = t.factors[k];
                const bool refl = !id.empty() && id.front() == '~';
                if (refl) id.erase(0, 1);
                if (!table->contains(id))
                    throw ConfigError(tp + "/factors/" + std::to_string(k), "undefined generator '" + id + "'");
                st.so.push_back(SOFactor{id, refl});
            }
            terms.push_back(std::move(st));
        }
        m.symbols.emplace(s.name, PCSOSymbol(std::move(terms), table));
    }
    m.expr = build_expr(c.expression, m, "/expression");
    return m;
}

AnalyzerConfig analyzer_config(const Config& c, int threads) {
    AnalyzerConfig a;
    a.p = c.p;
    a.fibers = FiberSampling{c.fiber.strategy, c.fiber.resolution, c.fiber.tau0, c.fiber.rho};
    a.decide.p = c.p;
    a.decide.zero_tol = c.tolerances.zero;
    a.decide.fibers = a.fibers;
    a.decide.drop_threshold = c.thresholds.sigma_drop;
    a.decide.padding = c.grid.padding;
    a.lens.rel_tol = c.tolerances.lens_rel;
    a.cluster_tol = c.tolerances.cluster;
    a.threads = threads;
    return a;
}

numerics::GridPolicy grid_policy(const Config& c) { return {c.grid.n, c.grid.padding, c.grid.tau_ratio}; }

}  // namespace finsec
