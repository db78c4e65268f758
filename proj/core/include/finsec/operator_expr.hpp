#pragma once

// Expressions in the algebra generated by multiplications aI (a a step
// function), convolutions W0(b) (b a PC/SO symbol) and the truncation
// sequence (P_tau). Images of homomorphisms also use the atoms P_R = W0(chi_-),
// Q_R = W0(chi_+) and P_1 = chi_(-1,1) I.

#include "finsec/symbols.hpp"

#include <memory>
#include <string>
#include <vector>

namespace finsec {

enum class NodeKind { ident, mult, conv, projseq, scale, sum, prod, conv_half, proj1 };

/// Half-line convolution atoms: minus is P_R = W0(chi_-), plus is Q_R = W0(chi_+).
enum class Half { minus, plus };

class OperatorExpr {
public:
    OperatorExpr();  // identity

    static OperatorExpr ident();
    static OperatorExpr mult(StepFunction a, std::string label = {});
    static OperatorExpr conv(PCSOSymbol b, std::string label = {});
    static OperatorExpr projseq();
    static OperatorExpr scale(complex c, OperatorExpr e);
    static OperatorExpr sum(std::vector<OperatorExpr> terms);
    static OperatorExpr prod(std::vector<OperatorExpr> factors);
    static OperatorExpr conv_half(Half h);
    static OperatorExpr proj1();

    /// W0(a) chi_- I + W0(b) chi_+ I
    static OperatorExpr paired(PCSOSymbol a, PCSOSymbol b, std::string la = "a", std::string lb = "b");
    /// P A P + Q with P the truncation sequence and Q = I - P.
    static OperatorExpr finite_section(const OperatorExpr& a);

    NodeKind kind() const noexcept;
    const StepFunction& step() const;
    const PCSOSymbol& symbol() const;
    complex scalar() const;
    Half half() const;
    const std::string& label() const;
    const std::vector<OperatorExpr>& children() const;

    /// True when no (P_tau) node occurs.
    bool is_concrete() const;
    /// Every convolution symbol occurring in the expression (ConvHalf as chi_-/chi_+).
    std::vector<PCSOSymbol> conv_symbols() const;
    std::string to_string() const;

    friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) { return sum({a, b}); }
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) { return prod({a, b}); }
    friend OperatorExpr operator*(complex c, const OperatorExpr& a) { return scale(c, a); }
    friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
        return sum({a, scale(-1.0, b)});
    }
    /// Structural equality; symbols compare by value, labels are ignored.
    friend bool operator==(const OperatorExpr& a, const OperatorExpr& b);

private:
    struct Node;
    explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace finsec
