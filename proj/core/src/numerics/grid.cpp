#include "finsec/numerics/grid.hpp"

#include "finsec/errors.hpp"

#include <cmath>

namespace finsec::numerics {

Grid::Grid(double tau_, int n_, int padding_) : tau(tau_), n(n_), padding(padding_) {
    if (!(tau > 0.0)) throw DomainError("grid radius must be positive");
    if (n < 8 || n % 2 != 0) throw DomainError("grid size must be even and at least 8");
    if (padding < 1) throw DomainError("padding factor must be at least 1");
}

Eigen::VectorXd Grid::points() const {
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v(j) = x(j);
    return v;
}

double lp_norm(const Eigen::VectorXcd& v, double p, double h) {
    if (p == 2.0) return std::sqrt(h) * v.norm();
    double s = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) s += std::pow(std::abs(v(j)), p);
    return std::pow(h * s, 1.0 / p);
}

}  // namespace finsec::numerics
