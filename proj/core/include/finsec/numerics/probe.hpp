#pragma once

// Strong-limit probes. For the limits at -inf / +inf the truncated sequence
// is conjugated by shifts, V_{+-tau} A_tau V_{-+tau}; for the homogenization
// at eta it is conjugated by U_eta and the dilation Z_tau. The deviation from
// the claimed limit is measured on fixed test vectors.

#include "finsec/numerics/grid.hpp"
#include "finsec/operator_expr.hpp"

#include <vector>

namespace finsec::numerics {

struct ProbeRecord {
    double tau = 0.0;
    /// max over test vectors of ||(conjugated A_tau - limit) v|| / ||v||.
    double deviation = 0.0;
};

struct ProbeResult {
    std::vector<ProbeRecord> records;
    /// Non-increasing in tau up to 1e-14.
    bool monotone = true;
    double final_deviation = 0.0;
};

/// Test vectors: e^{-x^2}, x e^{-x^2} and a unit bump on [-2, 3], cut to [-5, 5].
std::vector<std::function<complex(double)>> default_test_vectors();

/// i in {-1, 1}. The shifts are realised as matrices on a grid of step h whose radius
/// covers every tau plus the test-vector support.
ProbeResult probe_w(const OperatorExpr& seq, int i, const std::vector<double>& taus, double h = 0.25,
                    int padding = 4);

/// Z_tau is carried out in index space: the conjugated operator on the unit grid of radius
/// `radius` equals U A_tau U^{-1} on the grid scaled by tau with the same n.
ProbeResult probe_h(const OperatorExpr& seq, double eta, const std::vector<double>& taus, int n = 1024,
                    double radius = 2.0 * M_PI, int padding = 4);

}  // namespace finsec::numerics
