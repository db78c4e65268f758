#pragma once

// Homomorphic images of sequence-level expressions: the strong limits
// W_{-1}, W_0, W_1, the homogenizations H_eta and the 2x2 symbol maps
// N_eta^- and N_eta^+ over the fiber at infinity.

#include "finsec/operator_expr.hpp"

#include <Eigen/Dense>

#include <optional>

namespace finsec {

/// i in {-1, 0, 1}. P -> chi_+ I / I / chi_- I, aI -> a(-inf) / a / a(+inf), W0(b) -> W0(b).
OperatorExpr w_image(const OperatorExpr& expr, int i);

/// P -> P_1, aI -> a(-inf) chi_- + a(+inf) chi_+, W0(b) -> b(eta-) P_R + b(eta+) Q_R.
OperatorExpr h_eta_image(const OperatorExpr& expr, double eta);

/// H_eta image at a point where every convolution symbol is continuous; the
/// image is then the multiplication operator by the returned step function.
StepFunction h_eta_multiplier(const OperatorExpr& expr, double eta);

enum class Side { minus, plus };

/// x -> N_eta^{side}(expr)(x), a 2x2 matrix function on the lens.
class SymbolMatrix2 {
public:
    SymbolMatrix2(OperatorExpr expr, FiberAssignment fiber, Side side, double cluster_tol = 1e-6);

    /// `branch` = +1 uses the principal root R(x) = sqrt(x(1-x)); -1 flips its sign.
    Eigen::Matrix2cd operator()(complex x, int branch = 1) const;
    complex det(complex x, int branch = 1) const { return (*this)(x, branch).determinant(); }
    complex entry11(complex x) const { return (*this)(x)(0, 0); }

    const FiberAssignment& fiber() const noexcept { return fiber_; }
    Side side() const noexcept { return side_; }

private:
    Eigen::Matrix2cd eval(const OperatorExpr& e, complex x, complex r) const;

    OperatorExpr expr_;
    FiberAssignment fiber_;
    Side side_;
    double cluster_tol_;
};

inline SymbolMatrix2 n_eta_matrix(const OperatorExpr& expr, const FiberAssignment& fiber, Side side,
                                  double cluster_tol = 1e-6) {
    return SymbolMatrix2(expr, fiber, side, cluster_tol);
}

/// Principal branch of sqrt(x(1-x)).
complex r_branch(complex x);

}  // namespace finsec
