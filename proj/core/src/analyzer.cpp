#include "finsec/analyzer.hpp"

#include "finsec/errors.hpp"
#include "finsec/homomorphisms.hpp"
#include "finsec/numerics/sweep.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace finsec {

const char* to_string(Condition c) {
    switch (c) {
        case Condition::a: return "a";
        case Condition::b: return "b";
        case Condition::c: return "c";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::stable_numeric: return "stable (numeric)";
        case Verdict::unstable: return "unstable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string StabilityReport::verdict_text() const {
    if (!fsm) return to_string(verdict);
    switch (verdict) {
        case Verdict::stable: return "applies";
        case Verdict::stable_numeric: return "applies (numeric)";
        case Verdict::unstable: return "does not apply";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<ConditionRecord> StabilityReport::first_failure() const {
    for (const auto& r : records)
        if (!r.passed && r.decided) return r;
    for (const auto& r : records)
        if (!r.passed) return r;
    return std::nullopt;
}

std::optional<ConditionRecord> StabilityReport::witness() const {
    for (const auto& r : records)
        if (!r.passed && r.decided && (r.fiber || r.witness_x)) return r;
    return first_failure();
}

Verdict aggregate(const std::vector<ConditionRecord>& records) {
    bool open = false, numeric = false;
    for (const auto& r : records) {
        if (!r.passed && r.decided) return Verdict::unstable;
        if (!r.passed) open = true;
        if (r.method == Method::numeric) numeric = true;
    }
    if (open) return Verdict::inconclusive;
    return numeric ? Verdict::stable_numeric : Verdict::stable;
}

namespace {

ConditionRecord from_decision(Condition c, std::string checkpoint, const InvertibilityResult& r) {
    ConditionRecord rec;
    rec.condition = c;
    rec.checkpoint = std::move(checkpoint);
    rec.passed = r.passed;
    rec.decided = r.decided;
    rec.margin = r.margin;
    rec.method = r.method;
    rec.detail = r.detail;
    return rec;
}

DecideConfig decide_cfg(const AnalyzerConfig& cfg) {
    DecideConfig d = cfg.decide;
    d.p = cfg.p;
    d.fibers = cfg.fibers;
    return d;
}

std::vector<double> jump_set(const OperatorExpr& e) {
    std::set<double> s;
    for (const auto& b : e.conv_symbols())
        for (double t : b.breakpoints()) s.insert(t);
    return {s.begin(), s.end()};
}

std::string eta_name(double eta) {
    std::ostringstream os;
    os << "eta=" << eta;
    return os.str();
}

}  // namespace

std::vector<ConditionRecord> check_condition_a(const OperatorExpr& seq, const AnalyzerConfig& cfg) {
    const auto d = decide_cfg(cfg);
    std::vector<ConditionRecord> out(3);
    numerics::parallel_for(3, cfg.threads, [&](std::size_t k) {
        const int i = static_cast<int>(k) - 1;
        out[k] = from_decision(Condition::a, "W_" + std::to_string(i), decide_invertible(w_image(seq, i), d));
    });
    return out;
}

std::vector<ConditionRecord> check_condition_b(const OperatorExpr& seq, const AnalyzerConfig& cfg) {
    const auto d = decide_cfg(cfg);
    const auto jumps = jump_set(seq);
    std::vector<ConditionRecord> out(jumps.size());
    numerics::parallel_for(jumps.size(), cfg.threads, [&](std::size_t k) {
        out[k] = from_decision(Condition::b, eta_name(jumps[k]), decide_invertible(h_eta_image(seq, jumps[k]), d));
        out[k].eta = jumps[k];
    });

    // Between jumps H_eta(A) is a multiplication by a step function.
    bool pure = true;
    for (const auto& b : seq.conv_symbols()) pure = pure && b.is_pure_pc();
    auto modulus = [&](double eta) { return h_eta_multiplier(seq, eta).min_modulus(); };

    std::vector<double> etas;
    const double lo = jumps.empty() ? -1.0 : std::min(-1.0, jumps.front()) - 1.0;
    const double hi = jumps.empty() ? 1.0 : std::max(1.0, jumps.back()) + 1.0;
    if (pure) {
        etas.push_back(jumps.empty() ? 0.0 : jumps.front() - 1.0);
        for (std::size_t k = 0; k + 1 < jumps.size(); ++k) etas.push_back(0.5 * (jumps[k] + jumps[k + 1]));
        if (!jumps.empty()) etas.push_back(jumps.back() + 1.0);
    } else {
        const long steps = std::lround((hi - lo) * cfg.eta_per_unit);
        for (long j = 0; j <= steps; ++j) etas.push_back(lo + (hi - lo) * double(j) / double(steps));
        for (int k = 0; k <= 60; ++k) {
            const double t = std::ldexp(1.0, k);
            if (t > hi) etas.push_back(t);
            if (-t < lo) etas.push_back(-t);
        }
        etas.erase(std::remove_if(etas.begin(), etas.end(),
                                  [&](double e) { return std::binary_search(jumps.begin(), jumps.end(), e); }),
                   etas.end());
        std::sort(etas.begin(), etas.end());
    }

    std::vector<double> mods(etas.size());
    numerics::parallel_for(etas.size(), cfg.threads, [&](std::size_t k) { mods[k] = modulus(etas[k]); });
    const auto best = std::min_element(mods.begin(), mods.end()) - mods.begin();
    double worst = mods[best], at = etas[best];

    ConditionRecord rec;
    rec.condition = Condition::b;
    rec.checkpoint = "continuity points";
    rec.method = pure ? Method::exact : Method::grid;
    if (!pure && worst > cfg.decide.zero_tol) {
        // Refine between the neighbours of the sampled minimum, staying clear of jumps.
        double a = best > 0 ? etas[best - 1] : etas[best];
        double b = best + 1 < static_cast<long>(etas.size()) ? etas[best + 1] : etas[best];
        for (double j : jumps)
            if (j > a && j < at) a = j + 1e-9 * (1.0 + std::abs(j));
            else if (j < b && j > at) b = j - 1e-9 * (1.0 + std::abs(j));
        if (b > a) {
            const auto [x, fx] = boost::math::tools::brent_find_minima(modulus, a, b, 40);
            if (fx < worst) {
                worst = fx;
                at = x;
            }
        }
    }
    rec.margin = worst;
    rec.passed = worst > cfg.decide.zero_tol;
    rec.eta = at;
    std::ostringstream os;
    os << "min modulus of the multiplier " << worst << " at eta=" << at << " over " << etas.size() << " point(s)";
    rec.detail = os.str();
    out.push_back(rec);
    return out;
}

std::vector<ConditionRecord> check_condition_c(const OperatorExpr& expr, const std::vector<FiberAssignment>& fibers,
                                               const AnalyzerConfig& cfg, bool entry11) {
    if (fibers.empty()) throw FiberError("condition (c) needs at least one fiber point");
    const double ctol =
        cfg.fibers.strategy == FiberStrategy::trajectory ? std::numeric_limits<double>::infinity() : cfg.cluster_tol;

    std::vector<ConditionRecord> out;
    for (Side side : {Side::minus, Side::plus}) {
        std::vector<LensCheck> res(fibers.size());
        numerics::parallel_for(fibers.size(), cfg.threads, [&](std::size_t k) {
            const SymbolMatrix2 m(expr, fibers[k], side, ctol);
            res[k] = entry11 ? det_nonvanishing_on_lens([&m](complex x) { return m.entry11(x); }, cfg.p, cfg.lens)
                             : det_nonvanishing_on_lens(m, cfg.p, cfg.lens);
        });
        ConditionRecord rec;
        rec.condition = Condition::c;
        rec.checkpoint = side == Side::minus ? "N^-" : "N^+";
        rec.checkpoint += entry11 ? " (1,1) entry" : " determinant";
        rec.method = Method::exact;
        rec.passed = true;
        rec.margin = std::numeric_limits<double>::infinity();
        std::size_t pick = 0;
        for (std::size_t k = 0; k < res.size(); ++k) {
            if (!res[k].passed) {
                rec.passed = false;
                pick = k;
                break;
            }
            if (res[k].margin < rec.margin) {
                rec.margin = res[k].margin;
                pick = k;
            }
        }
        if (!rec.passed) {
            rec.margin = 0.0;
            rec.witness_x = res[pick].witness;
        }
        rec.fiber = fibers[pick];
        std::ostringstream os;
        os << fibers.size() << " fiber point(s); " << (rec.passed ? "worst " : "first failure: ") << res[pick].detail;
        rec.detail = os.str();
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

StabilityReport assemble(const OperatorExpr& seq_for_ab, const OperatorExpr& expr_for_c, bool entry11,
                         const AnalyzerConfig& cfg) {
    StabilityReport rep;
    rep.p = cfg.p;
    rep.strategy = cfg.fibers.strategy;
    auto a = check_condition_a(seq_for_ab, cfg);
    auto b = check_condition_b(seq_for_ab, cfg);
    auto c = check_condition_c(expr_for_c, sample_fibers(expr_for_c.conv_symbols(), cfg.fibers), cfg, entry11);
    for (auto* part : {&a, &b, &c}) rep.records.insert(rep.records.end(), part->begin(), part->end());
    rep.verdict = aggregate(rep.records);
    return rep;
}

}  // namespace

StabilityReport analyze_stability(const OperatorExpr& seq, const AnalyzerConfig& cfg) {
    geometry::conjugate_exponent(cfg.p);
    return assemble(seq, seq, false, cfg);
}

StabilityReport fsm_check(const OperatorExpr& a, const AnalyzerConfig& cfg) {
    geometry::conjugate_exponent(cfg.p);
    if (!a.is_concrete()) throw DomainError("fsm_check expects an operator without (P_tau)");
    auto rep = assemble(OperatorExpr::finite_section(a), a, true, cfg);
    rep.fsm = true;
    return rep;
}

}  // namespace finsec
