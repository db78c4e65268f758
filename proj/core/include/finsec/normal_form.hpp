#pragma once

// Block normal form of a concrete operator. Splitting the line at every
// breakpoint of every multiplication into intervals I_0 < I_1 < ... gives
//
//     T = sum_{k,l} chi_{I_k} W0(Gamma_kl) chi_{I_l}
//
// whenever each monomial of the expanded expression contains at most one
// convolution between multiplications. For k != l a constant Gamma_kl
// contributes nothing, so off-diagonal symbols matter only modulo constants.

#include "finsec/operator_expr.hpp"

#include <optional>
#include <vector>

namespace finsec {

struct Monomial {
    complex coeff{1.0};
    /// Alternating factors after merging; each is a multiplication or a convolution.
    std::vector<OperatorExpr> atoms;
};

/// Expands sums and products. ConvHalf becomes a convolution by chi_-/chi_+,
/// P_1 a multiplication by chi_(-1,1); constant convolutions become scalars.
/// Throws DomainError on (P_tau) nodes.
std::vector<Monomial> expand(const OperatorExpr& concrete);

struct BlockForm {
    std::vector<double> cuts;
    std::vector<std::vector<PCSOSymbol>> gamma;

    std::size_t size() const { return cuts.size() + 1; }
    double lower(std::size_t k) const;
    double upper(std::size_t k) const;
    /// chi_k W0(Gamma_kl) chi_l vanishes (Gamma_kl constant and k != l).
    bool off_diagonal_zero(std::size_t k, std::size_t l) const;
};

/// Nullopt when some monomial has two or more convolutions separated by a multiplication.
std::optional<BlockForm> block_form(const OperatorExpr& concrete);

/// Symbol is alpha chi_- + beta chi_+ (pure PC, breakpoints contained in {0}).
bool is_two_valued(const PCSOSymbol& s, complex* alpha = nullptr, complex* beta = nullptr);
/// Symbol is a constant (pure PC without jumps).
bool is_constant_symbol(const PCSOSymbol& s, complex* value = nullptr);

}  // namespace finsec
