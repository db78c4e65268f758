#include "finsec/numerics/pnorm.hpp"

#include "finsec/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace finsec::numerics {

namespace {

using Vec = Eigen::VectorXcd;

// Sum of (|v_j| / max |v|)^p; scaling by the largest entry keeps huge exponents finite.
double scaled_power_sum(const Vec& v, double p, double amax) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) s += std::pow(std::abs(v(j)) / amax, p);
    return s;
}

double vnorm(const Vec& v, double p) {
    if (p == 2.0) return v.norm();
    const double amax = v.cwiseAbs().maxCoeff();
    if (amax == 0.0) return 0.0;
    return amax * std::pow(scaled_power_sum(v, p, amax), 1.0 / p);
}

// Vector attaining equality in Hoelder's inequality: <dual(y), y> = ||y||_p, ||dual(y)||_q = 1.
Vec dual(const Vec& y, double p) {
    const double amax = y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
    if (amax == 0.0) return Vec::Zero(y.size());
    // (|y_j| / ||y||_p)^(p-1) = (|y_j| / amax)^(p-1) * s^(-(p-1)/p)
    const double norm_factor = std::pow(scaled_power_sum(y, p, amax), -(p - 1.0) / p);
    Vec z(y.size());
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        const double a = std::abs(y(j));
        z(j) = a == 0.0 ? complex{0.0} : std::pow(a / amax, p - 1.0) * norm_factor * (y(j) / a);
    }
    return z;
}

}  // namespace

double estimate_pnorm(const LinearMap& apply, const LinearMap& apply_adjoint, Eigen::Index n,
                      const PNormOptions& opt) {
    if (!(opt.p > 1.0)) throw DomainError("p-norm estimator needs p > 1");
    const double q = opt.p / (opt.p - 1.0);
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    double best = 0.0;
    for (int s = 0; s < opt.starts; ++s) {
        Vec x(n);
        if (s == 0) x.setOnes();
        else
            for (Eigen::Index j = 0; j < n; ++j) x(j) = complex{nd(rng), nd(rng)};
        x /= vnorm(x, opt.p);
        double est = 0.0;
        for (int it = 0; it < opt.max_iter; ++it) {
            const Vec y = apply(x);
            const double ny = vnorm(y, opt.p);
            if (ny == 0.0) break;
            const double prev = est;
            est = ny;
            const Vec z = apply_adjoint(dual(y, opt.p));
            const double nz = vnorm(z, q);
            // Stationary once the dual step cannot increase the objective.
            if (nz <= std::abs(z.dot(x)) * (1.0 + opt.rel_tol) || std::abs(est - prev) <= opt.rel_tol * est) break;
            x = dual(z, q);
            x /= vnorm(x, opt.p);
        }
        best = std::max(best, est);
    }
    return best;
}

double estimate_pnorm(const Eigen::MatrixXcd& a, const PNormOptions& opt) {
    return estimate_pnorm([&](const Vec& v) -> Vec { return a * v; },
                          [&](const Vec& v) -> Vec { return a.adjoint() * v; }, a.cols(), opt);
}

double estimate_pcond(const Eigen::MatrixXcd& a, const PNormOptions& opt) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const auto diag = lu.matrixLU().diagonal();
    const double top = diag.cwiseAbs().maxCoeff();
    if (!(diag.cwiseAbs().minCoeff() > top * std::numeric_limits<double>::epsilon()))
        return std::numeric_limits<double>::infinity();
    const double inv = estimate_pnorm([&](const Vec& v) -> Vec { return lu.solve(v); },
                                      [&](const Vec& v) -> Vec { return lu.adjoint().solve(v); }, a.cols(), opt);
    return estimate_pnorm(a, opt) * inv;
}

std::pair<double, double> singular_value_range(const Eigen::MatrixXcd& a) {
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    return {s(s.size() - 1), s(0)};
}

}  // namespace finsec::numerics
