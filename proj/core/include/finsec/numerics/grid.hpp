#pragma once

// Uniform midpoint grid on [-tau, tau]: x_j = -tau + (j + 1/2) h, h = 2 tau / n.

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace finsec::numerics {

using complex = std::complex<double>;

struct Grid {
    double tau = 1.0;
    int n = 8;
    int padding = 4;

    Grid() = default;
    /// Throws DomainError unless tau > 0, n >= 8 even and padding >= 1.
    Grid(double tau, int n, int padding = 4);

    double h() const noexcept { return 2.0 * tau / n; }
    double x(int j) const noexcept { return -tau + (j + 0.5) * h(); }
    Eigen::VectorXd points() const;
};

struct DenseOperator {
    Eigen::MatrixXcd m;
    Grid grid;
    std::string label;
};

/// Discrete L^p norm with weight h^{1/p}.
double lp_norm(const Eigen::VectorXcd& v, double p, double h);

/// Samples f on the grid.
template <class F>
Eigen::VectorXcd sample(const Grid& g, F&& f) {
    Eigen::VectorXcd v(g.n);
    for (int j = 0; j < g.n; ++j) v(j) = f(g.x(j));
    return v;
}

}  // namespace finsec::numerics
