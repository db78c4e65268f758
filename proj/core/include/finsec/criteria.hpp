#pragma once

// Invertibility criteria for the concrete operators that the homomorphisms
// produce: one-sided invertibility of P c + Q d on an interval, the
// piecewise-constant singular integral operator on (-1,1), Wiener-Hopf and
// paired operators with piecewise-constant symbols, and a dispatcher that
// picks the sharpest applicable test for an arbitrary concrete expression.

#include "finsec/normal_form.hpp"

#include <span>
#include <string>

namespace finsec {

enum class GkClass { invertible, left_only, right_only, not_one_sided };

const char* to_string(GkClass c);

struct GkResult {
    GkClass cls = GkClass::not_one_sided;
    /// Winding of the (c/d) curve; meaningful only when the arc conditions hold.
    int winding = 0;
    /// Smallest modulus seen on the condition arcs (Chebyshev mu-grid).
    double margin = 0.0;
    std::string detail;
};

/// P_(alpha,beta) cI + Q_(alpha,beta) dI on L^p(alpha, beta); alpha or beta may be infinite,
/// but not both. Only jumps of c and d inside (alpha, beta) are used.
GkResult gk_one_sided(double p, const StepFunction& c, const StepFunction& d, double alpha, double beta);

bool sio_pc_invertible(double p, complex a_minus, complex a_plus, complex b_minus, complex b_plus);

struct CurveVerdict {
    bool invertible = false;
    double margin = 0.0;
    std::string detail;
};

/// Compression of W0(c) to a half-line (s, +inf), c a step function.
CurveVerdict wiener_hopf_invertible(double p, const StepFunction& c);

/// W0(g0) chi_(-inf,s) + W0(g1) chi_(s,+inf) with step functions g0, g1.
CurveVerdict paired_invertible(double p, const StepFunction& g0, const StepFunction& g1);

enum class Method { exact, grid, numeric };

const char* to_string(Method m);

struct DecideConfig {
    double p = 2.0;
    double zero_tol = 1e-9;
    /// Samples per unit length for symbols with SO factors.
    int so_grid_per_unit = 512;
    FiberSampling fibers;
    /// sigma_min drop (first grid / last grid) that flags non-invertibility.
    double drop_threshold = 10.0;
    std::vector<double> probe_taus{8.0, 16.0, 32.0};
    double probe_h = 0.25;
    int padding = 4;
};

struct InvertibilityResult {
    bool passed = false;
    /// False only for a numeric-probe failure, which is not conclusive.
    bool decided = true;
    double margin = 0.0;
    Method method = Method::exact;
    std::string detail;
};

/// Invertibility on L^p(R) of a concrete (ProjSeq-free) expression.
InvertibilityResult decide_invertible(const OperatorExpr& concrete, const DecideConfig& cfg);

/// Smallest |b| over R including the fiber values at infinity; exact for pure PC.
InvertibilityResult symbol_min_modulus(const PCSOSymbol& b, const DecideConfig& cfg);

}  // namespace finsec
