#include "finsec/numerics/sweep.hpp"

#include "finsec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace finsec::numerics {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

DenseOperator finite_section_matrix(const OperatorExpr& a, double tau_inner, const Grid& g) {
    if (!(tau_inner < g.tau)) throw DiscretizationError("truncation radius must be smaller than the grid radius");
    const Eigen::VectorXcd mask = window_mask(g, tau_inner);
    DenseOperator op = discretize(a, g);
    op.m = mask.asDiagonal() * op.m * mask.asDiagonal();
    op.m.diagonal() += Eigen::VectorXcd::Ones(g.n) - mask;
    op.label = "P A P + Q for A = " + op.label;
    return op;
}

namespace {

void check_increasing(const std::vector<double>& taus) {
    if (taus.empty()) throw DomainError("tau list is empty");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0)) throw DomainError("tau values must be positive");
        if (i && !(taus[i] > taus[i - 1])) throw DomainError("tau values must be strictly increasing");
    }
}

}  // namespace

SweepResult cond_sweep(const OperatorExpr& a, const std::vector<double>& taus, double p, const GridPolicy& policy,
                       std::uint64_t seed, int threads) {
    check_increasing(taus);
    SweepResult res;
    res.records.resize(taus.size());
    parallel_for(taus.size(), threads, [&](std::size_t i) {
        const Grid g = policy.grid_for(taus[i]);
        const auto op = finite_section_matrix(a, taus[i], g);
        auto& r = res.records[i];
        r.tau = taus[i];
        r.n = g.n;
        const auto [smin, smax] = singular_value_range(op.m);
        r.sigma_min = smin;
        r.singular = !(smin > smax * 1e-14);
        r.cond2 = r.singular ? std::numeric_limits<double>::infinity() : smax / smin;
        r.condp = p == 2.0 ? r.cond2 : estimate_pcond(op.m, PNormOptions{p, seed});
        if (std::isinf(r.condp)) r.singular = true;
    });

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < res.records.size(); ++i) {
        const auto& r = res.records[i];
        lo = std::min(lo, r.cond2);
        hi = std::max(hi, r.cond2);
        res.any_singular = res.any_singular || r.singular;
        if (i && r.sigma_min > res.records[i - 1].sigma_min * (1.0 + 1e-12)) res.sigma_nonincreasing = false;
    }
    res.cond_ratio = hi / lo;
    const double last = res.records.back().sigma_min;
    res.sigma_drop = last > 0.0 ? res.records.front().sigma_min / last : std::numeric_limits<double>::infinity();
    return res;
}

ConvergenceStudy solve_fsm(const OperatorExpr& a, const std::function<complex(double)>& f,
                           const std::vector<double>& taus, double p, const GridPolicy& policy) {
    check_increasing(taus);
    ConvergenceStudy st;
    st.grid = policy.grid_for(taus.back());
    const Grid& g = st.grid;
    const Eigen::MatrixXcd A = discretize(a, g).m;
    const Eigen::VectorXcd rhs = sample(g, f);

    Eigen::VectorXcd prev;
    for (double tau : taus) {
        const Eigen::VectorXcd mask = window_mask(g, tau);
        Eigen::MatrixXcd m = mask.asDiagonal() * A * mask.asDiagonal();
        m.diagonal() += Eigen::VectorXcd::Ones(g.n) - mask;
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
        const auto d = lu.matrixLU().diagonal().cwiseAbs();
        if (!(d.minCoeff() > d.maxCoeff() * std::numeric_limits<double>::epsilon())) st.singular = true;
        const Eigen::VectorXcd phi = lu.solve(mask.cwiseProduct(rhs));
        ConvergenceRecord r;
        r.tau = tau;
        if (prev.size()) r.diff_norm = lp_norm(phi - prev, p, g.h());
        r.residual = lp_norm(A * phi - rhs, p, g.h());
        st.records.push_back(r);
        prev = phi;
    }
    st.final_residual = st.records.back().residual;
    // Differences between the last three taus.
    const auto& rs = st.records;
    if (rs.size() >= 3) st.diffs_strictly_decreasing = *rs[rs.size() - 1].diff_norm < *rs[rs.size() - 2].diff_norm;
    if (rs.size() >= 4)
        st.diffs_strictly_decreasing =
            st.diffs_strictly_decreasing && *rs[rs.size() - 2].diff_norm < *rs[rs.size() - 3].diff_norm;
    return st;
}

std::vector<complex> empirical_spectrum(const DenseOperator& m) {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.m, false);
    if (es.info() != Eigen::Success) throw DiscretizationError("eigenvalue iteration did not converge");
    const auto& ev = es.eigenvalues();
    return std::vector<complex>(ev.data(), ev.data() + ev.size());
}

}  // namespace finsec::numerics
