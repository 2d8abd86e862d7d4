#pragma once

#include <mutex>
#include <unordered_map>

#include "diamond/core_model.hpp"

namespace diamond {

/// Dirty-paper encoding order. User2First means user 2's signal is encoded
/// first and user 1 is coded against it (so user 1 sees no interference).
enum class DpcOrder { User1First, User2First };

/// One feasible transmit-covariance split: b1 + b2 must fit under the
/// covariance constraint K(rho) for some rho in [-1, 1], within PSD
/// tolerance.
struct DpcAllocation {
  Psd2 b1;
  Psd2 b2;
  DpcOrder order = DpcOrder::User2First;
};

/// Deterministic optimizer knobs shared by the covariance search and the
/// outer maximize-min search.
struct OptimizerOptions {
  int ntheta = 33;           ///< rotation-angle grid size over [0, pi)
  int nq = 17;               ///< eigenvalue grid size over [0, 1]
  int cd_max_iters = 200;    ///< coordinate-descent iteration cap
  double cd_shrink = 0.5;    ///< step shrink factor when no move improves
  double cd_step_tol = 1e-6; ///< stop once every step falls below this
  int rho_grid = 2001;       ///< outer maximize-min grid size
  double tolerance = 1e-4;   ///< reported accuracy target, bits

  /// Throws std::invalid_argument on nonsensical values (grids < 3,
  /// nonpositive steps or tolerance).
  void validate() const;

  /// Options tuned for a caller-chosen accuracy target. Targets at or above
  /// the 1e-4 default keep the default grids; tighter targets densify the
  /// grids proportionally to sqrt(1e-4 / tol) (the outer grid is capped at
  /// 20001 points) and lower the coordinate-descent stop.
  static OptimizerOptions with_tolerance(double tol);
};

/// Result of the covariance search: the optimum value in bits, the best
/// allocation found, and the improvement the local refinement achieved over
/// the best coarse-grid point (an internal convergence indicator).
struct SumCapacityResult {
  double bits = 0.0;
  DpcAllocation best_allocation;
  double optimizer_gap_estimate = 0.0;
};

/// The dirty-paper sum rate of one allocation, in bits per channel use, with
/// receive directions h1 = [1, a], h2 = [b, 1] and unit noise:
///   User2First: 1/2*log2(1 + h1'B1h1) + 1/2*log2(1 + h2'B2h2/(1 + h2'B1h2))
///   User1First: 1/2*log2(1 + h2'B2h2) + 1/2*log2(1 + h1'B1h1/(1 + h1'B2h1))
/// Throws std::invalid_argument when b1 + b2 cannot fit under the covariance
/// constraint for any correlation coefficient.
double dpc_sum_rate(const DpcAllocation& alloc, const ChannelConfig& cfg);

/// The sum capacity of the two-user broadcast subproblem under the
/// covariance constraint E[XX^T] <= K(rho): the maximum of dpc_sum_rate over
/// both encoding orders and all feasible allocations, to within
/// opts.tolerance bits.
///
/// The search saturates the constraint (b1 + b2 = K(rho); both rate terms
/// are nondecreasing when the total covariance grows in the PSD order) and
/// parameterizes b1 = K^{1/2} Q K^{1/2} with Q = R(theta) diag(q1, q2)
/// R(theta)^T, theta in [0, pi), q1, q2 in [0, 1]. A coarse
/// ntheta x nq x nq grid is followed by coordinate-descent refinement of the
/// winning point. Deterministic: no randomness anywhere.
SumCapacityResult sum_capacity(Rho rho, const ChannelConfig& cfg,
                               const OptimizerOptions& opts = {});

/// Full-cooperation ceiling: 1/2 * log2 det(I + H K(rho) H^T) with rows
/// h1 = [1, a], h2 = [b, 1]. A closed-form upper bound on sum_capacity.
double coop_capacity(Rho rho, const ChannelConfig& cfg);

/// Memoizing wrapper around sum_capacity for a fixed configuration and
/// option set, keyed by the correlation coefficient. The cached value
/// depends only on (a, b, p1, p2, rho) -- the link capacities c1, c2 play no
/// role in the covariance subproblem -- so one cache may serve a whole sweep
/// over c1 = c2 = C. Safe for concurrent use.
class SumCapacityCache {
 public:
  SumCapacityCache(const ChannelConfig& cfg, const OptimizerOptions& opts = {});

  /// sum_capacity(rho, config, options).bits, memoized.
  double operator()(double rho) const;

  const ChannelConfig& config() const { return cfg_; }
  const OptimizerOptions& options() const { return opts_; }
  /// True when the cached values are valid for cfg (same gains and powers;
  /// link capacities are ignored).
  bool compatible_with(const ChannelConfig& cfg) const;

 private:
  ChannelConfig cfg_;
  OptimizerOptions opts_;
  mutable std::mutex mu_;
  mutable std::unordered_map<double, double> memo_;
};

}  // namespace diamond
