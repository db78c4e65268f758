#include "finsec/numerics/oracle.hpp"

#include "finsec/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace finsec::numerics {

Eigen::MatrixXcd cauchy_matrix(const Grid& g) {
    const complex c = 2.0 / (M_PI * complex{0.0, 1.0});
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
            const int d = k - j;
            if (d % 2 != 0) s(j, k) = c / double(d);
        }
    return s;
}

namespace {

// b = pc + dec where pc is the sum of the SO-free terms.
void split(const PCSOSymbol& b, StepFunction& pc, std::vector<SymbolTerm>& dec) {
    pc = StepFunction::constant(0.0);
    for (const auto& t : b.terms()) {
        if (t.so.empty()) {
            pc = pc + t.pc;
            continue;
        }
        bool decays = false;
        for (const auto& f : t.so) decays = decays || b.table()->get(f.id).decaying;
        if (!decays) throw DiscretizationError("symbol term without an integrable kernel");
        dec.push_back(t);
    }
}

}  // namespace

Eigen::MatrixXcd convolution_oracle(const PCSOSymbol& b, const Grid& g) {
    StepFunction pc;
    std::vector<SymbolTerm> dec;
    split(b, pc, dec);
    pc = pc.simplified();

    // W0(pc) = pc(+inf) I + sum_k [pc(x_k-) - pc(x_k+)] W0(chi_(-inf, x_k)),
    // and W0(chi_(-inf, w)) = U P_R U^{-1} with U = exp(-i w x).
    Eigen::MatrixXcd m = pc.at_plus_inf() * Eigen::MatrixXcd::Identity(g.n, g.n);
    if (!pc.is_constant()) {
        const Eigen::MatrixXcd p_r = 0.5 * (Eigen::MatrixXcd::Identity(g.n, g.n) + cauchy_matrix(g));
        for (double w : pc.breakpoints()) {
            const auto [lo, hi] = pc.one_sided_limits(w);
            const Eigen::VectorXcd u = sample(g, [w](double x) { return std::polar(1.0, -w * x); });
            m += (lo - hi) * (u.asDiagonal() * p_r * u.conjugate().asDiagonal());
        }
    }
    if (dec.empty()) return m;

    const PCSOSymbol bd(dec, b.table());
    const auto bps = bd.breakpoints();
    // Integration range: beyond it the decaying part is below 1e-16.
    double reach = 1.0;
    for (double t : bps) reach = std::max(reach, std::abs(t) + 1.0);
    while (reach < 1e6 && (std::abs(bd(reach)) > 1e-16 || std::abs(bd(-reach)) > 1e-16)) reach *= 1.25;
    std::vector<double> nodes{-reach};
    for (double t : bps)
        if (std::abs(t) < reach) nodes.push_back(t);
    nodes.push_back(reach);

    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto kernel = [&](double x) {
        complex acc = 0.0;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const double a = nodes[i], c = nodes[i + 1];
            const double re = GK::integrate([&](double w) { return (bd(w) * std::polar(1.0, -w * x)).real(); },
                                            a, c, 15, 1e-13);
            const double im = GK::integrate([&](double w) { return (bd(w) * std::polar(1.0, -w * x)).imag(); },
                                            a, c, 15, 1e-13);
            acc += complex{re, im};
        }
        return acc / (2.0 * M_PI);
    };
    const double h = g.h();
    std::vector<complex> k(2 * static_cast<std::size_t>(g.n) - 1);
    for (int d = -(g.n - 1); d <= g.n - 1; ++d) k[static_cast<std::size_t>(d + g.n - 1)] = h * kernel(d * h);
    for (int j = 0; j < g.n; ++j)
        for (int c = 0; c < g.n; ++c) m(j, c) += k[static_cast<std::size_t>(j - c + g.n - 1)];
    return m;
}

}  // namespace finsec::numerics
