#include "finsec/homomorphisms.hpp"

#include "finsec/errors.hpp"

namespace finsec {

namespace {

template <class Leaf>
OperatorExpr map_structure(const OperatorExpr& e, const Leaf& leaf) {
    switch (e.kind()) {
        case NodeKind::scale: return OperatorExpr::scale(e.scalar(), map_structure(e.children().front(), leaf));
        case NodeKind::sum:
        case NodeKind::prod: {
            std::vector<OperatorExpr> kids;
            kids.reserve(e.children().size());
            for (const auto& c : e.children()) kids.push_back(map_structure(c, leaf));
            return e.kind() == NodeKind::sum ? OperatorExpr::sum(std::move(kids)) : OperatorExpr::prod(std::move(kids));
        }
        default: return leaf(e);
    }
}

PCSOSymbol half_symbol(Half h) {
    return PCSOSymbol::from_step(h == Half::minus ? StepFunction::chi_minus() : StepFunction::chi_plus());
}

}  // namespace

OperatorExpr w_image(const OperatorExpr& expr, int i) {
    if (i < -1 || i > 1) throw DomainError("W_i needs i in {-1, 0, 1}");
    return map_structure(expr, [i](const OperatorExpr& e) -> OperatorExpr {
        switch (e.kind()) {
            case NodeKind::projseq:
                if (i == 0) return OperatorExpr::ident();
                return OperatorExpr::mult(i < 0 ? StepFunction::chi_plus() : StepFunction::chi_minus(),
                                          i < 0 ? "chi_+" : "chi_-");
            case NodeKind::mult:
                if (i == 0) return e;
                return OperatorExpr::mult(
                    StepFunction::constant(i < 0 ? e.step().at_minus_inf() : e.step().at_plus_inf()),
                    e.label() + (i < 0 ? "(-inf)" : "(+inf)"));
            case NodeKind::proj1:
                if (i == 0) return e;
                return OperatorExpr::mult(StepFunction::constant(0.0), "0");
            default: return e;
        }
    });
}

OperatorExpr h_eta_image(const OperatorExpr& expr, double eta) {
    return map_structure(expr, [eta](const OperatorExpr& e) -> OperatorExpr {
        switch (e.kind()) {
            case NodeKind::projseq: return OperatorExpr::proj1();
            case NodeKind::mult:
                return OperatorExpr::mult(
                    StepFunction::two_valued(e.step().at_minus_inf(), e.step().at_plus_inf()), e.label() + "(+-inf)");
            case NodeKind::proj1: return OperatorExpr::mult(StepFunction::two_valued(0.0, 0.0), "0");
            case NodeKind::conv:
            case NodeKind::conv_half: {
                const PCSOSymbol b = e.kind() == NodeKind::conv ? e.symbol() : half_symbol(e.half());
                const auto [lo, hi] = b.one_sided_limits(eta);
                return OperatorExpr::sum({OperatorExpr::scale(lo, OperatorExpr::conv_half(Half::minus)),
                                          OperatorExpr::scale(hi, OperatorExpr::conv_half(Half::plus))});
            }
            default: return e;
        }
    });
}

StepFunction h_eta_multiplier(const OperatorExpr& e, double eta) {
    switch (e.kind()) {
        case NodeKind::ident: return StepFunction::constant(1.0);
        case NodeKind::projseq: return StepFunction::indicator(-1.0, 1.0);
        case NodeKind::proj1: return StepFunction::constant(0.0);
        case NodeKind::mult: return StepFunction::two_valued(e.step().at_minus_inf(), e.step().at_plus_inf());
        case NodeKind::conv: return StepFunction::constant(e.symbol()(eta));
        case NodeKind::conv_half: return StepFunction::constant(half_symbol(e.half())(eta));
        case NodeKind::scale: return e.scalar() * h_eta_multiplier(e.children().front(), eta);
        case NodeKind::sum: {
            StepFunction acc = StepFunction::constant(0.0);
            for (const auto& c : e.children()) acc = acc + h_eta_multiplier(c, eta);
            return acc;
        }
        case NodeKind::prod: {
            StepFunction acc = StepFunction::constant(1.0);
            for (const auto& c : e.children()) acc = acc * h_eta_multiplier(c, eta);
            return acc;
        }
    }
    return StepFunction::constant(0.0);
}

complex r_branch(complex x) { return std::sqrt(x * (1.0 - x)); }

SymbolMatrix2::SymbolMatrix2(OperatorExpr expr, FiberAssignment fiber, Side side, double cluster_tol)
    : expr_(std::move(expr)), fiber_(std::move(fiber)), side_(side), cluster_tol_(cluster_tol) {
    // Surface MissingAssignment / FiberError at construction.
    for (const auto& b : expr_.conv_symbols()) b.fiber_values(fiber_, cluster_tol_);
}

Eigen::Matrix2cd SymbolMatrix2::operator()(complex x, int branch) const {
    return eval(expr_, x, static_cast<double>(branch < 0 ? -1 : 1) * r_branch(x));
}

Eigen::Matrix2cd SymbolMatrix2::eval(const OperatorExpr& e, complex x, complex r) const {
    using M = Eigen::Matrix2cd;
    switch (e.kind()) {
        case NodeKind::ident: return M::Identity();
        case NodeKind::projseq: {
            M m = M::Zero();
            m(0, 0) = 1.0;
            return m;
        }
        case NodeKind::mult: {
            const complex v = side_ == Side::minus ? e.step().at_minus_inf() : e.step().at_plus_inf();
            return v * M::Identity();
        }
        case NodeKind::conv:
        case NodeKind::conv_half: {
            const PCSOSymbol b = e.kind() == NodeKind::conv ? e.symbol() : half_symbol(e.half());
            auto [bm, bp] = b.fiber_values(fiber_, cluster_tol_);
            if (side_ == Side::plus) std::swap(bm, bp);
            M m;
            m(0, 0) = bm * x + bp * (1.0 - x);
            m(0, 1) = (bm - bp) * r;
            m(1, 0) = (bm - bp) * r;
            m(1, 1) = bm * (1.0 - x) + bp * x;
            return m;
        }
        case NodeKind::proj1: throw DomainError("N maps are defined on sequence-level expressions only");
        case NodeKind::scale: return e.scalar() * eval(e.children().front(), x, r);
        case NodeKind::sum: {
            M acc = M::Zero();
            for (const auto& c : e.children()) acc += eval(c, x, r);
            return acc;
        }
        case NodeKind::prod: {
            M acc = M::Identity();
            for (const auto& c : e.children()) acc = acc * eval(c, x, r);
            return acc;
        }
    }
    return M::Zero();
}

}  // namespace finsec
