#pragma once

#include "diamond/core_model.hpp"

namespace diamond {

/// A rate value in bits per channel use. Extended-real: -infinity is a legal
/// result (produced only by f_c at |rho| = 1) so that min/max compositions
/// absorb the divergent penalty naturally.
using ClosedFormValue = double;

/// f_a(rho) = c1 + 1/2 * log2(1 + max{a^2, 1} * (1 - rho^2) * p2).
/// Even in rho, nonincreasing in |rho|, equals c1 at |rho| = 1.
ClosedFormValue f_a(Rho rho, const ChannelConfig& cfg);

/// f_b(rho) = c2 + 1/2 * log2(1 + max{b^2, 1} * (1 - rho^2) * p1).
/// Mirror of f_a with the roles (a, p2, c1) replaced by (b, p1, c2).
ClosedFormValue f_b(Rho rho, const ChannelConfig& cfg);

/// f_c(rho) = c1 + c2 - 1/2 * log2(1 / (1 - rho^2)).
/// Equals c1 + c2 at rho = 0, strictly decreasing in |rho|, and -infinity at
/// |rho| = 1.
ClosedFormValue f_c(Rho rho, const ChannelConfig& cfg);

/// The positive-branch endpoint
///   rho_x = sgn(x) * (sqrt(1 + t) - sqrt(t)),  t = 1 / (4 x^2 p1 p2),
/// evaluated in the cancellation-free form sgn(x) / (sqrt(1+t) + sqrt(t)).
/// Lies in (-1, 1), has the sign of x, and |rho_x| grows with |x|*sqrt(p1*p2).
/// Throws std::domain_error when x = 0 or p1*p2 = 0 (the interval collapses;
/// use interval_a_x, which substitutes the continuity limit [0, 0]).
Rho rho_x(double x, const ChannelConfig& cfg);

/// The search interval A_x: [0, rho_x] for x >= 0, [rho_x, 0] for x < 0,
/// and the degenerate [0, 0] when x = 0 or p1*p2 = 0 (limit of rho_x as
/// x -> 0).
Interval interval_a_x(double x, const ChannelConfig& cfg);

/// The point-to-point term
///   1/2 * log2(b^2*p1 + p2 + 1 + 2*b*rho*sqrt(p1*p2)),
/// i.e. 1/2 * log2(1 + h2^T K(rho) h2) with h2 = [b, 1]. The log argument is
/// >= 1 up to roundoff for every rho in [-1, 1].
ClosedFormValue p2p_rate(Rho rho, const ChannelConfig& cfg);

}  // namespace diamond
