#pragma once

// Matrix p-norm estimation by Higham's power method with dual vectors,
// and extreme singular values.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>

namespace finsec::numerics {

struct PNormOptions {
    double p = 2.0;
    std::uint64_t seed = 20240917;
    int starts = 3;
    int max_iter = 100;
    double rel_tol = 1e-10;
};

using complex = std::complex<double>;
using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

/// Lower bound for ||A||_p from the map and its adjoint; the best of `starts` runs
/// (a flat start vector followed by seeded random ones).
double estimate_pnorm(const LinearMap& apply, const LinearMap& apply_adjoint, Eigen::Index n,
                      const PNormOptions& opt);

double estimate_pnorm(const Eigen::MatrixXcd& a, const PNormOptions& opt);

/// ||A||_p * ||A^{-1}||_p with the inverse applied through an LU factorization.
/// Returns +inf if the factorization is singular.
double estimate_pcond(const Eigen::MatrixXcd& a, const PNormOptions& opt);

/// (sigma_min, sigma_max).
std::pair<double, double> singular_value_range(const Eigen::MatrixXcd& a);

}  // namespace finsec::numerics
