#include "finsec/numerics/discretize.hpp"

#include "finsec/errors.hpp"
#include "finsec/normal_form.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <vector>

namespace finsec::numerics {

namespace {

// Diagonal matrices stay vectors until a dense factor shows up.
struct Mat {
    bool diagonal = true;
    Eigen::VectorXcd d;
    Eigen::MatrixXcd m;

    Eigen::MatrixXcd dense() const {
        if (!diagonal) return m;
        return d.asDiagonal();
    }
};

Mat diag(Eigen::VectorXcd d) { return Mat{true, std::move(d), {}}; }
Mat full(Eigen::MatrixXcd m) { return Mat{false, {}, std::move(m)}; }

Mat multiply(const Mat& a, const Mat& b) {
    if (a.diagonal && b.diagonal) return diag(a.d.cwiseProduct(b.d));
    if (a.diagonal) return full(a.d.asDiagonal() * b.m);
    if (b.diagonal) return full(a.m * b.d.asDiagonal());
    return full(a.m * b.m);
}

Mat add(const Mat& a, const Mat& b) {
    if (a.diagonal && b.diagonal) return diag(a.d + b.d);
    Eigen::MatrixXcd m = a.diagonal ? b.m : a.m;
    const Mat& o = a.diagonal ? a : b;
    if (o.diagonal) m.diagonal() += o.d;
    else m += o.m;
    return full(std::move(m));
}

Mat scale(complex c, Mat a) {
    if (a.diagonal) a.d *= c;
    else a.m *= c;
    return a;
}

Mat build(const OperatorExpr& e, const Grid& g) {
    switch (e.kind()) {
        case NodeKind::ident: return diag(Eigen::VectorXcd::Ones(g.n));
        case NodeKind::projseq: throw DomainError("(P_tau) has no single-operator discretization");
        case NodeKind::mult: return diag(step_samples(e.step(), g));
        case NodeKind::proj1: return diag(window_mask(g, 1.0));
        case NodeKind::conv: {
            complex c;
            if (is_constant_symbol(e.symbol(), &c)) return diag(Eigen::VectorXcd::Constant(g.n, c));
            return full(convolution_matrix(e.symbol(), g));
        }
        case NodeKind::conv_half:
            return full(convolution_matrix(
                PCSOSymbol::from_step(e.half() == Half::minus ? StepFunction::chi_minus() : StepFunction::chi_plus()),
                g));
        case NodeKind::scale: return scale(e.scalar(), build(e.children().front(), g));
        case NodeKind::sum: {
            Mat acc = build(e.children().front(), g);
            for (std::size_t i = 1; i < e.children().size(); ++i) acc = add(acc, build(e.children()[i], g));
            return acc;
        }
        case NodeKind::prod: {
            Mat acc = build(e.children().front(), g);
            for (std::size_t i = 1; i < e.children().size(); ++i) acc = multiply(acc, build(e.children()[i], g));
            return acc;
        }
    }
    return diag(Eigen::VectorXcd::Zero(g.n));
}

}  // namespace

Eigen::VectorXcd symbol_samples(const PCSOSymbol& b, const Grid& g) {
    const int N = g.padding * g.n;
    const double dw = 2.0 * M_PI / (N * g.h());
    const auto bps = b.breakpoints();
    auto at = [&](double w) -> complex {
        for (double t : bps)
            if (std::abs(w - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
                const auto [lo, hi] = b.one_sided_limits(t);
                return 0.5 * (lo + hi);
            }
        return b(w);
    };
    Eigen::VectorXcd B(N);
    for (int l = -N / 2; l < N / 2; ++l) {
        const double w = l * dw;
        B((l + N) % N) = l == -N / 2 ? 0.5 * (at(w) + at(-w)) : at(w);
    }
    return B;
}

Eigen::MatrixXcd convolution_matrix(const PCSOSymbol& b, const Grid& g) {
    const int N = g.padding * g.n;
    const Eigen::VectorXcd B = symbol_samples(b, g);
    std::vector<complex> in(B.data(), B.data() + N), kernel;
    Eigen::FFT<double> fft;
    fft.fwd(kernel, in);
    Eigen::MatrixXcd m(g.n, g.n);
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j) m(j, k) = kernel[static_cast<std::size_t>((j - k + N) % N)] / double(N);
    return m;
}

DenseOperator discretize(const OperatorExpr& concrete, const Grid& g) {
    return DenseOperator{build(concrete, g).dense(), g, concrete.to_string()};
}

Eigen::VectorXcd step_samples(const StepFunction& a, const Grid& g) {
    return sample(g, [&](double x) { return a(x); });
}

Eigen::VectorXcd window_mask(const Grid& g, double tau_inner) {
    if (tau_inner > g.tau) throw DiscretizationError("mask radius exceeds the grid radius");
    return sample(g, [&](double x) { return complex{std::abs(x) < tau_inner ? 1.0 : 0.0}; });
}

Eigen::MatrixXcd shift_matrix(const Grid& g, double s) {
    const long k = std::lround(s / g.h());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.n, g.n);
    for (long j = 0; j < g.n; ++j) {
        const long src = j - k;
        if (src >= 0 && src < g.n) m(j, src) = 1.0;
    }
    return m;
}

Eigen::MatrixXcd dilation_matrix(const Grid& g, double t, double p) {
    if (!(t > 0.0)) throw DomainError("dilation factor must be positive");
    const double c = std::pow(t, -1.0 / p);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.n, g.n);
    for (int j = 0; j < g.n; ++j) {
        // Fractional index of x_j / t.
        const double u = (g.x(j) / t + g.tau) / g.h() - 0.5;
        const int i0 = static_cast<int>(std::floor(u));
        const double w = u - i0;
        if (i0 >= 0 && i0 < g.n) m(j, i0) += c * (1.0 - w);
        if (i0 + 1 >= 0 && i0 + 1 < g.n) m(j, i0 + 1) += c * w;
    }
    return m;
}

Eigen::MatrixXcd modulation_matrix(const Grid& g, double eta) {
    return sample(g, [&](double x) { return std::polar(1.0, eta * x); }).asDiagonal();
}

}  // namespace finsec::numerics
