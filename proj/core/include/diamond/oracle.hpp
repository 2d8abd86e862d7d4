#pragma once

#include "diamond/bounds.hpp"
#include "diamond/core_model.hpp"

namespace diamond {

// Brute-force verifiers for the two optimizers plus the algebraic identity
// behind the averaged bound term. Deliberately slow and simple -- no
// refinement, no memoization -- so that their correctness is evident by
// inspection; they are the trust anchors for the hard-coded expected values
// in the test suite.

/// Exhaustive covariance search: the maximum of dpc_sum_rate over both
/// encoding orders and the full (theta, q1, q2) grid with ntheta angles on
/// [0, pi) and nq eigenvalues on [0, 1]. Monotonically nondecreasing under
/// aligned grid refinement. Requires ntheta >= 3 and nq >= 3.
double grid_sum_capacity(Rho rho, const ChannelConfig& cfg, int ntheta,
                         int nq);

/// Exhaustive maximize-min: evaluates min over fns on n uniform points of
/// the domain and returns the best (first point on ties). Requires n >= 3.
/// A degenerate domain [c, c] evaluates at c.
MaxMinResult grid_max_min(const std::vector<RhoFn>& fns, Interval domain,
                          int n);

/// Residual of the substitution identity behind the averaged bound term.
/// With n3 = b*sqrt(p1*p2)*(1/rho - rho) - 1, returns
///   | 1/2*log2( ((1-rho^2)*b^2*p1 + 1 + n3) * ((1-rho^2)*p2 + 1 + n3)
///               / ((1 + n3) * (b^2*p1 + p2 + 2*b*rho*sqrt(p1*p2) + 1 + n3)) )
///     - ( -1/2*log2(1/(1-rho^2)) ) |,
/// which is identically zero on the admissible set where n3 >= 0: rho
/// nonzero, sharing the sign of b, with |rho| <= |rho_b|. Requires b != 0
/// and positive powers; throws std::domain_error outside the admissible set.
double n3_identity_residual(Rho rho, const ChannelConfig& cfg);

}  // namespace diamond
