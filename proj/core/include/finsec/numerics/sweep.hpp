#pragma once

// Finite-section experiments: truncated matrices, condition sweeps across
// tau, convergence of truncated solutions, and matrix spectra.

#include "finsec/numerics/discretize.hpp"
#include "finsec/numerics/pnorm.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace finsec::numerics {

/// Grid for truncation radius tau: radius tau_ratio * tau with n points.
struct GridPolicy {
    int n = 1024;
    int padding = 4;
    double tau_ratio = 2.0;

    Grid grid_for(double tau) const { return Grid(tau_ratio * tau, n, padding); }
};

/// mask A mask + (I - mask) with mask = chi_{|x| < tau_inner}. Throws
/// DiscretizationError unless tau_inner < grid.tau.
DenseOperator finite_section_matrix(const OperatorExpr& a, double tau_inner, const Grid& g);

struct SweepRecord {
    double tau = 0.0;
    int n = 0;
    double sigma_min = 0.0;
    double cond2 = 0.0;
    double condp = 0.0;
    bool singular = false;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    /// max cond2 / min cond2 over the sweep.
    double cond_ratio = 1.0;
    /// sigma_min(first tau) / sigma_min(last tau).
    double sigma_drop = 1.0;
    bool sigma_nonincreasing = true;
    bool any_singular = false;
};

/// Throws DomainError unless taus is strictly increasing. Runs the taus on up to `threads` workers.
SweepResult cond_sweep(const OperatorExpr& a, const std::vector<double>& taus, double p, const GridPolicy& policy,
                       std::uint64_t seed = 20240917, int threads = 1);

struct ConvergenceRecord {
    double tau = 0.0;
    /// ||phi_tau - phi_previous||_p; empty for the first tau.
    std::optional<double> diff_norm;
    double residual = 0.0;

    friend bool operator==(const ConvergenceRecord&, const ConvergenceRecord&) = default;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRecord> records;
    Grid grid;
    bool singular = false;
    /// Residual of the largest-tau solution.
    double final_residual = 0.0;
    bool diffs_strictly_decreasing = false;
};

/// Solves (P_tau A P_tau + Q_tau) phi = P_tau f for each tau on one grid of radius
/// tau_ratio * max(tau), reporting successive differences and ||A phi_tau - f||_p.
ConvergenceStudy solve_fsm(const OperatorExpr& a, const std::function<complex(double)>& f,
                           const std::vector<double>& taus, double p, const GridPolicy& policy);

std::vector<complex> empirical_spectrum(const DenseOperator& m);

/// Parallel loop over [0, count) with at most `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace finsec::numerics
