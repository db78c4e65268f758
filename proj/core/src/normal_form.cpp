#include "finsec/normal_form.hpp"

#include "finsec/errors.hpp"

#include <limits>
#include <set>

namespace finsec {

namespace {

using Atoms = std::vector<OperatorExpr>;

OperatorExpr as_atom(const OperatorExpr& e) {
    switch (e.kind()) {
        case NodeKind::conv_half:
            return OperatorExpr::conv(PCSOSymbol::from_step(e.half() == Half::minus ? StepFunction::chi_minus()
                                                                                     : StepFunction::chi_plus()),
                                      e.half() == Half::minus ? "chi_-" : "chi_+");
        case NodeKind::proj1: return OperatorExpr::mult(StepFunction::indicator(-1.0, 1.0), "chi_(-1,1)");
        default: return e;
    }
}

std::vector<Monomial> expand_rec(const OperatorExpr& e) {
    switch (e.kind()) {
        case NodeKind::ident: return {Monomial{1.0, {}}};
        case NodeKind::projseq: throw DomainError("truncation sequence in a concrete-operator expression");
        case NodeKind::mult:
        case NodeKind::conv:
        case NodeKind::conv_half:
        case NodeKind::proj1: return {Monomial{1.0, {as_atom(e)}}};
        case NodeKind::scale: {
            auto out = expand_rec(e.children().front());
            for (auto& m : out) m.coeff *= e.scalar();
            return out;
        }
        case NodeKind::sum: {
            std::vector<Monomial> out;
            for (const auto& c : e.children()) {
                auto part = expand_rec(c);
                out.insert(out.end(), part.begin(), part.end());
            }
            return out;
        }
        case NodeKind::prod: {
            std::vector<Monomial> acc{Monomial{1.0, {}}};
            for (const auto& c : e.children()) {
                const auto part = expand_rec(c);
                std::vector<Monomial> next;
                next.reserve(acc.size() * part.size());
                for (const auto& a : acc)
                    for (const auto& b : part) {
                        Monomial m{a.coeff * b.coeff, a.atoms};
                        m.atoms.insert(m.atoms.end(), b.atoms.begin(), b.atoms.end());
                        next.push_back(std::move(m));
                    }
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

// Merges neighbouring multiplications and neighbouring convolutions and
// pulls constants out, until nothing changes.
void merge(Monomial& m) {
    bool changed = true;
    while (changed) {
        changed = false;
        Atoms out;
        for (const auto& raw : m.atoms) {
            const OperatorExpr a = raw.kind() == NodeKind::mult ? OperatorExpr::mult(raw.step().simplified()) : raw;
            if (a.kind() == NodeKind::conv) {
                complex c;
                if (is_constant_symbol(a.symbol(), &c)) {
                    m.coeff *= c;
                    changed = true;
                    continue;
                }
            }
            if (a.kind() == NodeKind::mult && a.step().is_constant()) {
                m.coeff *= a.step().at_minus_inf();
                changed = true;
                continue;
            }
            if (!out.empty() && out.back().kind() == a.kind()) {
                if (a.kind() == NodeKind::mult)
                    out.back() = OperatorExpr::mult(out.back().step() * a.step());
                else
                    out.back() = OperatorExpr::conv(out.back().symbol() * a.symbol());
                changed = true;
                continue;
            }
            out.push_back(a);
        }
        m.atoms = std::move(out);
    }
}

}  // namespace

std::vector<Monomial> expand(const OperatorExpr& concrete) {
    auto out = expand_rec(concrete);
    for (auto& m : out) merge(m);
    return out;
}

bool is_constant_symbol(const PCSOSymbol& s, complex* value) {
    const auto c = s.canonical();
    if (c.terms().empty()) {
        if (value) *value = 0.0;
        return true;
    }
    if (c.terms().size() != 1 || !c.terms().front().so.empty() || !c.terms().front().pc.is_constant()) return false;
    if (value) *value = c.terms().front().pc.at_minus_inf();
    return true;
}

bool is_two_valued(const PCSOSymbol& s, complex* alpha, complex* beta) {
    if (!s.is_pure_pc()) return false;
    const auto st = s.as_step().simplified();
    for (double b : st.breakpoints())
        if (b != 0.0) return false;
    if (alpha) *alpha = st.at_minus_inf();
    if (beta) *beta = st.at_plus_inf();
    return true;
}

double BlockForm::lower(std::size_t k) const {
    return k == 0 ? -std::numeric_limits<double>::infinity() : cuts[k - 1];
}

double BlockForm::upper(std::size_t k) const {
    return k == cuts.size() ? std::numeric_limits<double>::infinity() : cuts[k];
}

bool BlockForm::off_diagonal_zero(std::size_t k, std::size_t l) const {
    return k != l && is_constant_symbol(gamma[k][l]);
}

std::optional<BlockForm> block_form(const OperatorExpr& concrete) {
    const auto monos = expand(concrete);
    std::set<double> cuts;
    for (const auto& m : monos) {
        int convs = 0;
        for (const auto& a : m.atoms) {
            if (a.kind() == NodeKind::conv) ++convs;
            else cuts.insert(a.step().breakpoints().begin(), a.step().breakpoints().end());
        }
        if (convs > 1) return std::nullopt;
    }

    BlockForm bf;
    bf.cuts.assign(cuts.begin(), cuts.end());
    const std::size_t n = bf.size();
    bf.gamma.assign(n, std::vector<PCSOSymbol>(n, PCSOSymbol::constant(0.0)));

    // Representative point of interval k.
    std::vector<double> mid(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = bf.lower(k), hi = bf.upper(k);
        if (std::isinf(lo) && std::isinf(hi)) mid[k] = 0.0;
        else if (std::isinf(lo)) mid[k] = hi - 1.0;
        else if (std::isinf(hi)) mid[k] = lo + 1.0;
        else mid[k] = 0.5 * (lo + hi);
    }

    for (const auto& m : monos) {
        StepFunction left = StepFunction::constant(1.0), right = StepFunction::constant(1.0);
        const PCSOSymbol* b = nullptr;
        for (const auto& a : m.atoms) {
            if (a.kind() == NodeKind::conv) b = &a.symbol();
            else if (b) right = right * a.step();
            else left = left * a.step();
        }
        if (!b) {
            const StepFunction d = left * right;
            for (std::size_t k = 0; k < n; ++k)
                bf.gamma[k][k] = bf.gamma[k][k] + PCSOSymbol::constant(m.coeff * d(mid[k]));
            continue;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const complex lk = left(mid[k]);
            if (lk == complex{0.0}) continue;
            for (std::size_t l = 0; l < n; ++l) {
                const complex rl = right(mid[l]);
                if (rl == complex{0.0}) continue;
                bf.gamma[k][l] = bf.gamma[k][l] + (m.coeff * lk * rl) * *b;
            }
        }
    }
    return bf;
}

}  // namespace finsec
