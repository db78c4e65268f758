#include "finsec/symbols.hpp"

#include "finsec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace finsec {

namespace {

complex so_product(const std::vector<SOFactor>& so, const GeneratorTable* table, double t) {
    complex acc{1.0};
    for (const auto& f : so) {
        if (!table) throw UnknownGenerator(f.id);
        acc *= table->get(f.id)(f.reflected ? -t : t);
    }
    return acc;
}

}  // namespace

PCSOSymbol::PCSOSymbol(std::vector<SymbolTerm> terms, std::shared_ptr<const GeneratorTable> table)
    : terms_(std::move(terms)), table_(std::move(table)) {
    for (auto& t : terms_) {
        std::sort(t.so.begin(), t.so.end());
        for (const auto& f : t.so) {
            if (!table_ || !table_->contains(f.id)) throw UnknownGenerator(f.id);
        }
    }
}

PCSOSymbol PCSOSymbol::from_step(StepFunction s) {
    PCSOSymbol out;
    out.terms_.push_back(SymbolTerm{std::move(s), {}});
    return out;
}

complex PCSOSymbol::operator()(double t) const {
    complex acc{0.0};
    for (const auto& term : terms_) acc += term.pc(t) * so_product(term.so, table_.get(), t);
    return acc;
}

std::pair<complex, complex> PCSOSymbol::one_sided_limits(double eta) const {
    complex lo{0.0}, hi{0.0};
    for (const auto& term : terms_) {
        const auto [l, r] = term.pc.one_sided_limits(eta);
        const complex g = so_product(term.so, table_.get(), eta);
        lo += l * g;
        hi += r * g;
    }
    return {lo, hi};
}

std::pair<complex, complex> PCSOSymbol::fiber_values(const FiberAssignment& fiber, double cluster_tol) const {
    complex lo{0.0}, hi{0.0};
    for (const auto& term : terms_) {
        complex g{1.0};
        for (const auto& f : term.so) {
            const auto it = fiber.find(f.id);
            if (it == fiber.end()) throw MissingAssignment(f.id);
            if (std::isfinite(cluster_tol) && !table_->get(f.id).cluster_contains(it->second, cluster_tol))
                throw FiberError("value assigned to '" + f.id + "' lies outside its cluster set");
            g *= it->second;
        }
        lo += term.pc.at_minus_inf() * g;
        hi += term.pc.at_plus_inf() * g;
    }
    return {lo, hi};
}

StepFunction PCSOSymbol::gamma_eta(const FiberAssignment& fiber, double cluster_tol) const {
    const auto [lo, hi] = fiber_values(fiber, cluster_tol);
    return StepFunction::two_valued(lo, hi);
}

PCSOSymbol PCSOSymbol::reflect() const {
    PCSOSymbol out;
    out.table_ = table_;
    for (const auto& term : terms_) {
        SymbolTerm t{term.pc.reflect(), term.so};
        for (auto& f : t.so) f.reflected = !f.reflected;
        std::sort(t.so.begin(), t.so.end());
        out.terms_.push_back(std::move(t));
    }
    return out;
}

bool PCSOSymbol::is_pure_pc() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const SymbolTerm& t) { return t.so.empty(); });
}

StepFunction PCSOSymbol::as_step() const {
    if (!is_pure_pc()) throw DomainError("symbol has slowly oscillating factors");
    StepFunction acc = StepFunction::constant(0.0);
    for (const auto& t : terms_) acc = acc + t.pc;
    return acc;
}

std::vector<double> PCSOSymbol::breakpoints() const {
    std::set<double> b;
    for (const auto& t : canonical().terms_) b.insert(t.pc.breakpoints().begin(), t.pc.breakpoints().end());
    return {b.begin(), b.end()};
}

std::vector<std::string> PCSOSymbol::generator_ids() const {
    std::set<std::string> ids;
    for (const auto& t : terms_)
        for (const auto& f : t.so) ids.insert(f.id);
    return {ids.begin(), ids.end()};
}

PCSOSymbol PCSOSymbol::canonical() const {
    std::map<std::vector<SOFactor>, StepFunction> groups;
    for (const auto& t : terms_) {
        auto so = t.so;
        std::sort(so.begin(), so.end());
        auto it = groups.find(so);
        if (it == groups.end()) groups.emplace(so, t.pc.simplified());
        else it->second = it->second + t.pc;
    }
    PCSOSymbol out;
    out.table_ = table_;
    for (auto& [so, pc] : groups)
        if (!pc.is_zero()) out.terms_.push_back(SymbolTerm{pc.simplified(), so});
    return out;
}

PCSOSymbol operator+(const PCSOSymbol& a, const PCSOSymbol& b) {
    PCSOSymbol out;
    out.table_ = GeneratorTable::merge(a.table_, b.table_);
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    return out.canonical();
}

PCSOSymbol operator*(const PCSOSymbol& a, const PCSOSymbol& b) {
    PCSOSymbol out;
    out.table_ = GeneratorTable::merge(a.table_, b.table_);
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            SymbolTerm t{x.pc * y.pc, x.so};
            t.so.insert(t.so.end(), y.so.begin(), y.so.end());
            std::sort(t.so.begin(), t.so.end());
            out.terms_.push_back(std::move(t));
        }
    return out.canonical();
}

PCSOSymbol operator*(complex c, const PCSOSymbol& a) {
    PCSOSymbol out;
    out.table_ = a.table_;
    for (const auto& t : a.terms_) out.terms_.push_back(SymbolTerm{c * t.pc, t.so});
    return out.canonical();
}

bool same_symbol(const PCSOSymbol& a, const PCSOSymbol& b) { return (a - b).is_zero(); }

std::vector<FiberAssignment> sample_fibers(const std::vector<PCSOSymbol>& symbols, const FiberSampling& cfg) {
    if (cfg.resolution < 1) throw DomainError("fiber resolution must be >= 1");
    std::shared_ptr<const GeneratorTable> table;
    std::set<std::string> ids;
    for (const auto& s : symbols) {
        table = GeneratorTable::merge(table, s.table());
        for (const auto& id : s.generator_ids()) ids.insert(id);
    }
    if (ids.empty()) return {FiberAssignment{}};

    std::vector<FiberAssignment> out;
    if (cfg.strategy == FiberStrategy::trajectory) {
        if (!(cfg.tau0 > 0.0) || !(cfg.rho > 1.0)) throw DomainError("trajectory needs tau0 > 0 and rho > 1");
        double t = cfg.tau0;
        for (int n = 0; n < cfg.resolution; ++n, t *= cfg.rho) {
            FiberAssignment f;
            for (const auto& id : ids) f[id] = table->get(id)(t);
            out.push_back(std::move(f));
        }
        return out;
    }

    out.push_back(FiberAssignment{});
    for (const auto& id : ids) {
        const auto grid = table->get(id).cluster_grid(cfg.resolution);
        if (grid.empty()) throw DomainError("generator '" + id + "' has an empty cluster set");
        std::vector<FiberAssignment> next;
        next.reserve(out.size() * grid.size());
        for (const auto& f : out)
            for (const auto& v : grid) {
                auto g = f;
                g[id] = v;
                next.push_back(std::move(g));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace finsec
