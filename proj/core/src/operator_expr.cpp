#include "finsec/operator_expr.hpp"

#include "finsec/errors.hpp"

#include <sstream>

namespace finsec {

struct OperatorExpr::Node {
    NodeKind kind = NodeKind::ident;
    StepFunction step;
    PCSOSymbol symbol;
    complex scalar{1.0};
    Half half = Half::minus;
    std::string label;
    std::vector<OperatorExpr> children;
};

OperatorExpr::OperatorExpr() : node_(std::make_shared<const Node>()) {}

OperatorExpr OperatorExpr::ident() { return OperatorExpr(); }

OperatorExpr OperatorExpr::mult(StepFunction a, std::string label) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::mult;
    n->step = std::move(a);
    n->label = std::move(label);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::conv(PCSOSymbol b, std::string label) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::conv;
    n->symbol = std::move(b);
    n->label = std::move(label);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::projseq() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::projseq;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::scale(complex c, OperatorExpr e) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::scale;
    n->scalar = c;
    n->children.push_back(std::move(e));
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::sum(std::vector<OperatorExpr> terms) {
    if (terms.empty()) throw DomainError("sum needs at least one term");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::sum;
    n->children = std::move(terms);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::prod(std::vector<OperatorExpr> factors) {
    if (factors.empty()) throw DomainError("product needs at least one factor");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::prod;
    n->children = std::move(factors);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::conv_half(Half h) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::conv_half;
    n->half = h;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::proj1() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::proj1;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::paired(PCSOSymbol a, PCSOSymbol b, std::string la, std::string lb) {
    return sum({prod({conv(std::move(a), std::move(la)), mult(StepFunction::chi_minus(), "chi_-")}),
                prod({conv(std::move(b), std::move(lb)), mult(StepFunction::chi_plus(), "chi_+")})});
}

OperatorExpr OperatorExpr::finite_section(const OperatorExpr& a) {
    return sum({prod({projseq(), a, projseq()}), sum({ident(), scale(-1.0, projseq())})});
}

NodeKind OperatorExpr::kind() const noexcept { return node_->kind; }

const StepFunction& OperatorExpr::step() const {
    if (node_->kind != NodeKind::mult) throw DomainError("not a multiplication node");
    return node_->step;
}

const PCSOSymbol& OperatorExpr::symbol() const {
    if (node_->kind != NodeKind::conv) throw DomainError("not a convolution node");
    return node_->symbol;
}

complex OperatorExpr::scalar() const {
    if (node_->kind != NodeKind::scale) throw DomainError("not a scale node");
    return node_->scalar;
}

Half OperatorExpr::half() const {
    if (node_->kind != NodeKind::conv_half) throw DomainError("not a half-line convolution node");
    return node_->half;
}

const std::string& OperatorExpr::label() const { return node_->label; }

const std::vector<OperatorExpr>& OperatorExpr::children() const { return node_->children; }

bool OperatorExpr::is_concrete() const {
    if (node_->kind == NodeKind::projseq) return false;
    for (const auto& c : node_->children)
        if (!c.is_concrete()) return false;
    return true;
}

std::vector<PCSOSymbol> OperatorExpr::conv_symbols() const {
    std::vector<PCSOSymbol> out;
    switch (node_->kind) {
        case NodeKind::conv: out.push_back(node_->symbol); break;
        case NodeKind::conv_half:
            out.push_back(PCSOSymbol::from_step(node_->half == Half::minus ? StepFunction::chi_minus()
                                                                            : StepFunction::chi_plus()));
            break;
        default:
            for (const auto& c : node_->children) {
                auto s = c.conv_symbols();
                out.insert(out.end(), s.begin(), s.end());
            }
    }
    return out;
}

namespace {

std::string fmt_complex(complex c) {
    std::ostringstream os;
    if (c.imag() == 0.0) os << c.real();
    else os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return os.str();
}

}  // namespace

std::string OperatorExpr::to_string() const {
    const auto& n = *node_;
    switch (n.kind) {
        case NodeKind::ident: return "I";
        case NodeKind::projseq: return "P";
        case NodeKind::proj1: return "P1";
        case NodeKind::conv_half: return n.half == Half::minus ? "P_R" : "Q_R";
        case NodeKind::mult: return n.label.empty() ? "aI" : n.label + "I";
        case NodeKind::conv: return "W0(" + (n.label.empty() ? std::string("b") : n.label) + ")";
        case NodeKind::scale: return fmt_complex(n.scalar) + "*" + n.children.front().to_string();
        case NodeKind::sum:
        case NodeKind::prod: {
            std::string s = "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += n.kind == NodeKind::sum ? " + " : " ";
                s += n.children[i].to_string();
            }
            return s + ")";
        }
    }
    return "?";
}

bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case NodeKind::mult: return x.step == y.step;
        case NodeKind::conv: return same_symbol(x.symbol, y.symbol);
        case NodeKind::conv_half: return x.half == y.half;
        case NodeKind::scale:
            if (x.scalar != y.scalar) return false;
            break;
        default: break;
    }
    return x.children == y.children;
}

}  // namespace finsec
