#pragma once

#include <functional>
#include <vector>

#include "diamond/closed_forms.hpp"
#include "diamond/core_model.hpp"
#include "diamond/mimo_bc.hpp"

namespace diamond {

/// A real-valued function of the correlation coefficient. Extended-real
/// results (-infinity) are allowed.
using RhoFn = std::function<double(Rho)>;

/// Value and argmax of a one-dimensional maximization over rho.
struct MaxMinResult {
  double value = 0.0;
  Rho argmax;
};

/// Which cross gain selects the search interval A_x in bound_101.
enum class XSelector { UseA, UseB };

/// All bound values for one configuration. theorem1 is the minimum of
/// cutset_102 and the two bound_101 values, and never exceeds simple_cutset
/// (up to 1e-9).
struct BoundReport {
  double simple_cutset = 0.0;
  double cutset_102 = 0.0;
  double bound_101_a = 0.0;
  double bound_101_b = 0.0;
  double theorem1 = 0.0;
  Rho argmax_rho_102;
  Rho argmax_rho_101_a;
  Rho argmax_rho_101_b;
};

/// Maximize g(rho) = min over fns of fn(rho) on the domain, to within 1e-6
/// bits: a uniform grid of opts.rho_grid points picks the best cell (ties
/// prefer the smallest |rho|), then golden-section refinement searches that
/// cell. A degenerate domain [c, c] evaluates g(c). Throws
/// std::invalid_argument on an empty function list.
MaxMinResult maximize_min(const std::vector<RhoFn>& fns, Interval domain,
                          const OptimizerOptions& opts = {});

/// The four-term set {f_a, f_b, f_c(0), sum-capacity} whose min is maximized
/// by cutset_bound_102. The closures capture cfg by value and cm by
/// reference; cm must outlive them and be compatible with cfg.
std::vector<RhoFn> theorem1_terms_102(const ChannelConfig& cfg,
                                      SumCapacityCache& cm);

/// The five-term set of bound_101: the four terms above plus the averaged
/// term 1/2 * (f_c(rho) + sum-capacity(rho)).
std::vector<RhoFn> theorem1_terms_101(const ChannelConfig& cfg,
                                      SumCapacityCache& cm);

/// Tightened cut-set bound: max over rho in [-1, 1] of
///   min{f_a(rho), f_b(rho), f_c(0), sum-capacity(rho)}.
/// The value never exceeds f_c(0).
MaxMinResult cutset_bound_102(const ChannelConfig& cfg,
                              const OptimizerOptions& opts = {});
MaxMinResult cutset_bound_102(const ChannelConfig& cfg,
                              const OptimizerOptions& opts,
                              SumCapacityCache& cm);

/// Strengthened bound: max over rho in A_x (x = a or b per the selector) of
///   min{f_a, f_b, f_c(0), sum-capacity, 1/2*(f_c + sum-capacity)}.
/// Never exceeds cutset_bound_102 (superset of min terms, subset domain).
MaxMinResult bound_101(XSelector x_selector, const ChannelConfig& cfg,
                       const OptimizerOptions& opts = {});
MaxMinResult bound_101(XSelector x_selector, const ChannelConfig& cfg,
                       const OptimizerOptions& opts, SumCapacityCache& cm);

/// The two-cut baseline: min{f_c(0), max over rho of sum-capacity(rho)}.
double simple_cutset(const ChannelConfig& cfg,
                     const OptimizerOptions& opts = {});
double simple_cutset(const ChannelConfig& cfg, const OptimizerOptions& opts,
                     SumCapacityCache& cm);

/// Every bound at once, sharing one sum-capacity cache across the four
/// maximizations. theorem1 = min(cutset_102, bound_101_a, bound_101_b);
/// the report's ordering invariant is re-checked and an InvariantViolation
/// is thrown if it fails (which would indicate an optimizer bug).
BoundReport theorem1_bound(const ChannelConfig& cfg,
                           const OptimizerOptions& opts = {});
BoundReport theorem1_bound(const ChannelConfig& cfg,
                           const OptimizerOptions& opts,
                           SumCapacityCache& cm);

}  // namespace diamond
