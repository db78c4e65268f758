#include "finsec/criteria.hpp"

#include "finsec/errors.hpp"
#include "finsec/geometry.hpp"
#include "finsec/numerics/discretize.hpp"
#include "finsec/numerics/pnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace finsec {

namespace geo = finsec::geometry;

namespace {

constexpr int kChebyshevPoints = 257;

const std::vector<double>& chebyshev_mu() {
    static const std::vector<double> mu = [] {
        std::vector<double> out(kChebyshevPoints);
        for (int j = 0; j < kChebyshevPoints; ++j)
            out[j] = 0.5 * (1.0 - std::cos(M_PI * j / (kChebyshevPoints - 1)));
        return out;
    }();
    return mu;
}

double arc_min_modulus(const geo::CircularArc& arc) {
    double m = std::numeric_limits<double>::infinity();
    for (double mu : chebyshev_mu()) m = std::min(m, std::abs(geo::arc_point(arc, mu)));
    return m;
}

std::string fmt(complex z) {
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

StepFunction reciprocal(const StepFunction& g) {
    std::vector<complex> v;
    v.reserve(g.values().size());
    for (complex x : g.values()) v.push_back(1.0 / x);
    return StepFunction(g.breakpoints(), std::move(v));
}

double min_abs(const std::vector<complex>& v) {
    double m = std::numeric_limits<double>::infinity();
    for (complex z : v) m = std::min(m, std::abs(z));
    return m;
}

// Distance from 0 to a sampled arc curve, used as a margin once the winding is known.
double curve_margin(const geo::ArcCurve& curve) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& arc : curve.arcs()) m = std::min(m, arc_min_modulus(arc));
    return m;
}

}  // namespace

const char* to_string(GkClass c) {
    switch (c) {
        case GkClass::invertible: return "invertible";
        case GkClass::left_only: return "left_only";
        case GkClass::right_only: return "right_only";
        case GkClass::not_one_sided: return "not_one_sided";
    }
    return "?";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::grid: return "grid";
        case Method::numeric: return "numeric";
    }
    return "?";
}

GkResult gk_one_sided(double p, const StepFunction& c, const StepFunction& d, double alpha, double beta) {
    if (!(alpha < beta)) throw DomainError("gk_one_sided needs alpha < beta");
    if (std::isinf(alpha) && std::isinf(beta)) throw DomainError("gk_one_sided needs (alpha, beta) != R");

    std::set<double> jumps;
    for (const auto* f : {&c, &d})
        for (double t : f->breakpoints())
            if (t > alpha && t < beta) jumps.insert(t);

    auto right_value = [&](const StepFunction& f) {
        return std::isinf(alpha) ? f.at_minus_inf() : f.one_sided_limits(alpha).second;
    };
    std::vector<complex> cv{right_value(c)}, dv{right_value(d)};
    for (double t : jumps) {
        cv.push_back(c.one_sided_limits(t).second);
        dv.push_back(d.one_sided_limits(t).second);
    }

    GkResult res;
    std::vector<std::pair<geo::CircularArc, std::string>> conditions;
    conditions.emplace_back(geo::CircularArc::make(dv.front(), cv.front(), p), "left endpoint");
    {
        std::size_t k = 0;
        for (double t : jumps) {
            std::ostringstream os;
            os << "jump at t=" << t;
            conditions.emplace_back(geo::CircularArc::make(cv[k] * dv[k + 1], cv[k + 1] * dv[k], p), os.str());
            ++k;
        }
    }
    conditions.emplace_back(geo::CircularArc::make(cv.back(), dv.back(), p), "right endpoint");

    res.margin = std::numeric_limits<double>::infinity();
    for (const auto& [arc, where] : conditions) {
        const double scale = std::max({1.0, std::abs(arc.z1), std::abs(arc.z2)});
        const double m = arc_min_modulus(arc);
        res.margin = std::min(res.margin, m);
        if (geo::arc_contains(arc, 0.0, geo::kMembershipTol * scale) || m <= geo::kMinModulusTol * scale) {
            res.cls = GkClass::not_one_sided;
            res.margin = 0.0;
            res.detail = "origin on the " + where + " condition arc";
            return res;
        }
    }

    std::vector<complex> ratio{1.0};
    for (std::size_t k = 0; k < cv.size(); ++k) ratio.push_back(cv[k] / dv[k]);
    try {
        res.winding = geo::winding_about_origin(geo::polygon_curve(p, ratio));
    } catch (const CurveThroughOrigin& e) {
        res.cls = GkClass::not_one_sided;
        res.margin = 0.0;
        res.detail = std::string("c/d curve: ") + e.what();
        return res;
    }
    res.cls = res.winding == 0 ? GkClass::invertible : res.winding > 0 ? GkClass::left_only : GkClass::right_only;
    res.detail = "wind=" + std::to_string(res.winding);
    return res;
}

bool sio_pc_invertible(double p, complex a_minus, complex a_plus, complex b_minus, complex b_plus) {
    for (complex v : {a_minus, a_plus, b_minus, b_plus})
        if (std::abs(v) <= geo::kMinModulusTol) return false;
    try {
        return geo::winding_about_origin(geo::triple_curve(p, 1.0, a_minus / a_plus, b_minus / b_plus)) == 0;
    } catch (const CurveThroughOrigin&) {
        return false;
    }
}

CurveVerdict wiener_hopf_invertible(double p, const StepFunction& c) {
    const auto s = c.simplified();
    CurveVerdict out;
    out.margin = min_abs(s.values());
    if (out.margin <= geo::kMinModulusTol) {
        out.margin = 0.0;
        out.detail = "symbol vanishes on an interval";
        return out;
    }
    if (s.is_constant()) {
        out.invertible = true;
        out.detail = "constant symbol";
        return out;
    }
    const auto curve = geo::polygon_curve(p, s.values());
    try {
        const int w = geo::winding_about_origin(curve);
        out.invertible = w == 0;
        out.margin = std::min(out.margin, curve_margin(curve));
        out.detail = "wind=" + std::to_string(w);
    } catch (const CurveThroughOrigin& e) {
        out.margin = 0.0;
        out.detail = std::string("symbol curve: ") + e.what();
    }
    return out;
}

CurveVerdict paired_invertible(double p, const StepFunction& g0, const StepFunction& g1) {
    CurveVerdict out;
    const double m = std::min(min_abs(g0.values()), min_abs(g1.values()));
    if (m <= geo::kMinModulusTol) {
        out.detail = "a coefficient symbol vanishes on an interval";
        return out;
    }
    out = wiener_hopf_invertible(p, (g0 * reciprocal(g1)).reflect());
    out.margin = std::min(out.margin, m);
    return out;
}

InvertibilityResult symbol_min_modulus(const PCSOSymbol& b, const DecideConfig& cfg) {
    InvertibilityResult r;
    if (b.is_pure_pc()) {
        r.margin = min_abs(b.as_step().values());
        r.passed = r.margin > cfg.zero_tol;
        r.method = Method::exact;
        r.detail = "min |b| over step values";
        return r;
    }

    const auto bps = b.breakpoints();
    double lo = -1.0, hi = 1.0;
    if (!bps.empty()) {
        lo = std::min(lo, bps.front() - 1.0);
        hi = std::max(hi, bps.back() + 1.0);
    }
    double worst = std::numeric_limits<double>::infinity();
    double where = 0.0;
    auto visit = [&](double t, complex v) {
        if (std::abs(v) < worst) {
            worst = std::abs(v);
            where = t;
        }
    };
    for (double t : bps) {
        const auto [m, pl] = b.one_sided_limits(t);
        visit(t, m);
        visit(t, pl);
        if (std::min(std::abs(m), std::abs(pl)) <= cfg.zero_tol) {
            r.passed = false;
            r.margin = 0.0;
            r.method = Method::exact;
            r.detail = "one-sided limit vanishes at t=" + std::to_string(t);
            return r;
        }
    }
    const long steps = std::max<long>(1, std::lround((hi - lo) * cfg.so_grid_per_unit));
    for (long j = 0; j <= steps; ++j) {
        const double t = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(steps);
        visit(t, b(t));
    }
    for (int k = 0; k <= 60; ++k) {
        const double t = std::ldexp(1.0, k);
        if (t > hi) visit(t, b(t));
        if (-t < lo) visit(-t, b(-t));
    }
    for (const auto& fiber : sample_fibers({b}, cfg.fibers)) {
        const auto [m, pl] = b.fiber_values(fiber, std::numeric_limits<double>::infinity());
        visit(std::numeric_limits<double>::infinity(), m);
        visit(std::numeric_limits<double>::infinity(), pl);
    }
    r.margin = worst;
    r.passed = worst > cfg.zero_tol;
    r.method = Method::grid;
    std::ostringstream os;
    os << "sampled min |b| = " << worst << " near t=" << where;
    r.detail = os.str();
    return r;
}

namespace {

InvertibilityResult numeric_probe(const OperatorExpr& t, const DecideConfig& cfg, const std::string& why) {
    InvertibilityResult r;
    r.method = Method::numeric;
    std::vector<double> sig;
    for (double tau : cfg.probe_taus) {
        int n = static_cast<int>(std::lround(2.0 * tau / cfg.probe_h));
        n = std::max(8, n + (n % 2));
        const numerics::Grid g(tau, n, cfg.padding);
        sig.push_back(numerics::singular_value_range(numerics::discretize(t, g).m).first);
    }
    const double drop = sig.back() > 0.0 ? sig.front() / sig.back() : std::numeric_limits<double>::infinity();
    r.margin = sig.back();
    r.passed = drop < cfg.drop_threshold;
    r.decided = r.passed;
    std::ostringstream os;
    os << why << "; sigma_min trend";
    for (double s : sig) os << ' ' << s;
    os << " (drop " << drop << ")";
    r.detail = os.str();
    return r;
}

InvertibilityResult from_curve(const CurveVerdict& v, const std::string& what) {
    InvertibilityResult r;
    r.passed = v.invertible;
    r.margin = v.margin;
    r.method = Method::exact;
    r.detail = what + ": " + v.detail;
    return r;
}

// Necessary condition for the unbounded routes: no zero of Gamma.
std::optional<InvertibilityResult> zero_precheck(const PCSOSymbol& g, const DecideConfig& cfg) {
    if (g.is_pure_pc()) return std::nullopt;
    auto r = symbol_min_modulus(g, cfg);
    if (!r.passed) return r;
    return std::nullopt;
}

std::string interval_name(double lo, double hi) {
    std::ostringstream os;
    os << '(' << lo << ", " << hi << ')';
    return os.str();
}

// Exact (or grid) verdict for one coupled block of intervals k0..k1, or nullopt.
std::optional<InvertibilityResult> decide_component(const BlockForm& bf, std::size_t k0, std::size_t k1,
                                                    const DecideConfig& cfg) {
    const double lo = bf.lower(k0), hi = bf.upper(k1);
    const bool whole = std::isinf(lo) && std::isinf(hi);
    const std::string where = "on " + interval_name(lo, hi);

    if (k0 == k1) {
        const auto& g = bf.gamma[k0][k0];
        complex c;
        if (is_constant_symbol(g, &c)) {
            InvertibilityResult r;
            r.margin = std::abs(c);
            r.passed = r.margin > cfg.zero_tol;
            r.detail = "multiplication by " + fmt(c) + " " + where;
            return r;
        }
        if (whole) {
            auto r = symbol_min_modulus(g, cfg);
            r.detail = "convolution " + where + ": " + r.detail;
            return r;
        }
        if (std::isinf(lo) || std::isinf(hi)) {
            if (auto z = zero_precheck(g, cfg)) return z;
            if (!g.is_pure_pc()) return std::nullopt;
            const auto step = g.as_step();
            return from_curve(wiener_hopf_invertible(cfg.p, std::isinf(hi) ? step : step.reflect()),
                              "Wiener-Hopf " + where);
        }
        complex a, b;
        if (!is_two_valued(g, &a, &b)) return std::nullopt;
        const auto gk = gk_one_sided(cfg.p, StepFunction::constant(a), StepFunction::constant(b), lo, hi);
        InvertibilityResult r;
        r.passed = gk.cls == GkClass::invertible;
        r.margin = gk.margin;
        r.detail = std::string("P c + Q d ") + where + ": " + to_string(gk.cls) + ", " + gk.detail;
        return r;
    }

    for (std::size_t k = k0; k <= k1; ++k)
        for (std::size_t l = k0; l <= k1; ++l)
            if (k != l && !is_constant_symbol(bf.gamma[k][l] - bf.gamma[l][l])) return std::nullopt;

    if (whole && k1 - k0 == 1) {
        const auto& g0 = bf.gamma[k0][k0];
        const auto& g1 = bf.gamma[k1][k1];
        if (auto z = zero_precheck(g0, cfg)) return z;
        if (auto z = zero_precheck(g1, cfg)) return z;
        if (!g0.is_pure_pc() || !g1.is_pure_pc()) return std::nullopt;
        std::ostringstream os;
        os << "paired operator cut at " << bf.cuts[k0];
        return from_curve(paired_invertible(cfg.p, g0.as_step(), g1.as_step()), os.str());
    }
    if (whole) return std::nullopt;

    std::vector<complex> alpha, beta;
    for (std::size_t l = k0; l <= k1; ++l) {
        complex a, b;
        if (!is_two_valued(bf.gamma[l][l], &a, &b)) return std::nullopt;
        alpha.push_back(a);
        beta.push_back(b);
    }
    std::vector<double> inner(bf.cuts.begin() + static_cast<long>(k0), bf.cuts.begin() + static_cast<long>(k1));

    InvertibilityResult r;
    if (lo == -1.0 && hi == 1.0 && inner.size() == 1 && inner.front() == 0.0) {
        r.passed = sio_pc_invertible(cfg.p, alpha[0], beta[0], alpha[1], beta[1]);
        r.margin = min_abs({alpha[0], beta[0], alpha[1], beta[1]});
        if (r.passed) {
            try {
                r.margin = std::min(r.margin, curve_margin(geo::triple_curve(cfg.p, 1.0, alpha[0] / beta[0],
                                                                             alpha[1] / beta[1])));
            } catch (const DomainError&) {
            }
        } else {
            r.margin = 0.0;
        }
        r.detail = "piecewise-constant singular integral operator on (-1, 1): " +
                   std::string(r.passed ? "invertible" : "not invertible") + " (a-=" + fmt(alpha[0]) +
                   ", a+=" + fmt(beta[0]) + ", b-=" + fmt(alpha[1]) + ", b+=" + fmt(beta[1]) + ")";
        return r;
    }
    const auto gk = gk_one_sided(cfg.p, StepFunction(inner, alpha), StepFunction(inner, beta), lo, hi);
    r.passed = gk.cls == GkClass::invertible;
    r.margin = gk.margin;
    r.detail = std::string("P c + Q d ") + where + ": " + to_string(gk.cls) + ", " + gk.detail;
    return r;
}

}  // namespace

InvertibilityResult decide_invertible(const OperatorExpr& concrete, const DecideConfig& cfg) {
    const auto bf = block_form(concrete);
    if (!bf) return numeric_probe(concrete, cfg, "no block normal form");

    const std::size_t n = bf->size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            if (k != l && !bf->off_diagonal_zero(k, l)) parent[find(k)] = find(l);

    std::vector<std::vector<std::size_t>> comps;
    {
        std::vector<long> slot(n, -1);
        for (std::size_t k = 0; k < n; ++k) {
            const auto r = find(k);
            if (slot[r] < 0) {
                slot[r] = static_cast<long>(comps.size());
                comps.emplace_back();
            }
            comps[slot[r]].push_back(k);
        }
    }

    InvertibilityResult agg;
    agg.passed = true;
    agg.margin = std::numeric_limits<double>::infinity();
    bool need_numeric = false;
    std::string details;
    for (const auto& c : comps) {
        const bool contiguous = c.back() - c.front() + 1 == c.size();
        std::optional<InvertibilityResult> r;
        if (contiguous) r = decide_component(*bf, c.front(), c.back(), cfg);
        if (!r) {
            need_numeric = true;
            continue;
        }
        if (!r->passed) return *r;
        agg.margin = std::min(agg.margin, r->margin);
        agg.method = std::max(agg.method, r->method);
        if (!details.empty()) details += "; ";
        details += r->detail;
    }
    if (need_numeric) {
        auto r = numeric_probe(concrete, cfg, "block without exact criterion");
        if (!details.empty()) r.detail = details + "; " + r.detail;
        r.margin = std::min(r.margin, agg.margin);
        return r;
    }
    agg.detail = details;
    return agg;
}

}  // namespace finsec
