#pragma once

// Nonvanishing of an analytic function on the lentiform domain L_p.

#include "finsec/geometry.hpp"
#include "finsec/homomorphisms.hpp"

#include <functional>
#include <optional>
#include <string>

namespace finsec {

struct LensCheckOptions {
    /// A sample counts as a zero when |f| <= rel_tol * max(1, max |f|).
    double rel_tol = 1e-9;
    int segment_points = 2049;
    int interior_t = 65;
    int interior_mu = 129;
};

struct LensCheck {
    bool passed = false;
    /// Smallest |f| found on the lens.
    double margin = 0.0;
    std::optional<complex> witness;
    /// Zeros inside the boundary by the argument principle (p != 2 only).
    int zero_count = 0;
    std::string detail;
};

LensCheck det_nonvanishing_on_lens(const std::function<complex(complex)>& f, double p,
                                   const LensCheckOptions& opt = {});

LensCheck det_nonvanishing_on_lens(const SymbolMatrix2& m, double p, const LensCheckOptions& opt = {});

}  // namespace finsec
