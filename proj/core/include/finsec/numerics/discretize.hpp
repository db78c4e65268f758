#pragma once

// Matrix realizations on a Grid. Multiplications become diagonals; a
// convolution W0(b) is the circulant of the inverse transform of b sampled
// at the dual frequencies of a zero-padded grid, restricted to the window.

#include "finsec/numerics/grid.hpp"
#include "finsec/operator_expr.hpp"

namespace finsec::numerics {

/// Samples b at omega_l = 2 pi l / (N h), l in [-N/2, N/2), N = padding * n. Jumps falling
/// on a node (and the Nyquist node) take the mean of the two one-sided values.
Eigen::VectorXcd symbol_samples(const PCSOSymbol& b, const Grid& g);

Eigen::MatrixXcd convolution_matrix(const PCSOSymbol& b, const Grid& g);

/// Throws DomainError for expressions containing (P_tau).
DenseOperator discretize(const OperatorExpr& concrete, const Grid& g);

/// Diagonal of a sampled at the grid points.
Eigen::VectorXcd step_samples(const StepFunction& a, const Grid& g);

/// chi_{|x| < tau_inner}; throws DiscretizationError if tau_inner exceeds the grid radius.
Eigen::VectorXcd window_mask(const Grid& g, double tau_inner);

/// (V_s f)(x) = f(x - s), with s rounded to a multiple of h; zero fill.
Eigen::MatrixXcd shift_matrix(const Grid& g, double s);

/// (Z_t f)(x) = t^{-1/p} f(x / t), linear interpolation, zero outside the window.
Eigen::MatrixXcd dilation_matrix(const Grid& g, double t, double p);

/// (U_eta f)(x) = exp(i eta x) f(x).
Eigen::MatrixXcd modulation_matrix(const Grid& g, double eta);

}  // namespace finsec::numerics
