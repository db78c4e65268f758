#include "finsec/numerics/probe.hpp"

#include "finsec/errors.hpp"
#include "finsec/homomorphisms.hpp"
#include "finsec/numerics/discretize.hpp"

#include <cmath>

namespace finsec::numerics {

namespace {

// A_tau for a sequence-level expression: (P_tau) becomes the window mask.
OperatorExpr at_tau(const OperatorExpr& e, double tau) {
    switch (e.kind()) {
        case NodeKind::projseq: return OperatorExpr::mult(StepFunction::indicator(-tau, tau), "P_tau");
        case NodeKind::scale: return OperatorExpr::scale(e.scalar(), at_tau(e.children().front(), tau));
        case NodeKind::sum:
        case NodeKind::prod: {
            std::vector<OperatorExpr> kids;
            for (const auto& c : e.children()) kids.push_back(at_tau(c, tau));
            return e.kind() == NodeKind::sum ? OperatorExpr::sum(std::move(kids)) : OperatorExpr::prod(std::move(kids));
        }
        default: return e;
    }
}

void finish(ProbeResult& r) {
    for (std::size_t i = 1; i < r.records.size(); ++i)
        if (r.records[i].deviation > r.records[i - 1].deviation + 1e-14) r.monotone = false;
    r.final_deviation = r.records.empty() ? 0.0 : r.records.back().deviation;
}

}  // namespace

std::vector<std::function<complex(double)>> default_test_vectors() {
    auto cut = [](auto f) {
        return [f](double x) -> complex { return std::abs(x) <= 5.0 ? f(x) : complex{0.0}; };
    };
    return {cut([](double x) { return complex{std::exp(-x * x)}; }),
            cut([](double x) { return complex{x * std::exp(-x * x)}; }),
            cut([](double x) { return complex{x > -2.0 && x < 3.0 ? 1.0 : 0.0}; })};
}

ProbeResult probe_w(const OperatorExpr& seq, int i, const std::vector<double>& taus, double h, int padding) {
    if (i != -1 && i != 1) throw DomainError("shift probes need i in {-1, 1}");
    double tmax = 0.0;
    for (double t : taus) tmax = std::max(tmax, t);
    const double radius = 2.0 * tmax + 10.0;
    int n = static_cast<int>(std::lround(2.0 * radius / h));
    n += n % 2;
    const Grid g(radius, n, padding);
    const auto limit = discretize(w_image(seq, i), g).m;

    ProbeResult res;
    for (double tau : taus) {
        // W_{-1}: V_tau A_tau V_{-tau};  W_1: V_{-tau} A_tau V_tau.
        const auto a = discretize(at_tau(seq, tau), g).m;
        const auto v_in = shift_matrix(g, -i * tau), v_out = shift_matrix(g, i * tau);
        double dev = 0.0;
        for (const auto& f : default_test_vectors()) {
            const Eigen::VectorXcd v = sample(g, f);
            const Eigen::VectorXcd w = v_in * (a * (v_out * v));
            dev = std::max(dev, (w - limit * v).norm() / v.norm());
        }
        res.records.push_back({tau, dev});
    }
    finish(res);
    return res;
}

ProbeResult probe_h(const OperatorExpr& seq, double eta, const std::vector<double>& taus, int n, double radius,
                    int padding) {
    const Grid unit(radius, n, padding);
    const auto limit = discretize(h_eta_image(seq, eta), unit).m;
    ProbeResult res;
    for (double tau : taus) {
        const Grid big(radius * tau, n, padding);
        const auto u = modulation_matrix(big, eta);
        const Eigen::MatrixXcd a = u * discretize(at_tau(seq, tau), big).m * u.adjoint();
        double dev = 0.0;
        for (const auto& f : default_test_vectors()) {
            const Eigen::VectorXcd v = sample(unit, f);
            dev = std::max(dev, (a * v - limit * v).norm() / v.norm());
        }
        res.records.push_back({tau, dev});
    }
    finish(res);
    return res;
}

}  // namespace finsec::numerics
