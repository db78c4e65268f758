#pragma once

// Independent quadrature assembly of W0(b), used only to cross-check the
// transform path. The piecewise-constant part is written with shifted
// copies of P_R = (I + S_R)/2, where S_R uses staggered midpoints; SO terms
// must be decaying and go through their kernel.

#include "finsec/numerics/grid.hpp"
#include "finsec/symbols.hpp"

namespace finsec::numerics {

/// Staggered-midpoint S_R: (1/(pi i)) * 2/(k - j) for odd k - j, 0 otherwise.
Eigen::MatrixXcd cauchy_matrix(const Grid& g);

/// Throws DiscretizationError when b has a non-decaying SO factor.
Eigen::MatrixXcd convolution_oracle(const PCSOSymbol& b, const Grid& g);

}  // namespace finsec::numerics
