#include "diamond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diamond {

namespace {

double min_over(const std::vector<RhoFn>& fns, double x) {
  double m = std::numeric_limits<double>::infinity();
  const Rho r(x);
  for (const auto& f : fns) {
    m = std::min(m, f(r));
  }
  return m;
}

void require_compatible(const SumCapacityCache& cm, const ChannelConfig& cfg) {
  if (!cm.compatible_with(cfg)) {
    throw std::invalid_argument(
        "sum-capacity cache was built for a different channel (gains or "
        "powers differ)");
  }
}

}  // namespace

MaxMinResult maximize_min(const std::vector<RhoFn>& fns, Interval domain,
                          const OptimizerOptions& opts) {
  if (fns.empty()) {
    throw std::invalid_argument("maximize_min requires at least one function");
  }
  opts.validate();
  const double lo = domain.lo();
  const double hi = domain.hi();
  if (hi <= lo) {
    return {min_over(fns, lo), Rho(lo)};
  }

  // Dense grid pass. Among exact ties the smallest |rho| wins, so that flat
  // plateaus (e.g. when the constant f_c(0) term is the active minimum
  // everywhere) report the canonical argmax 0.
  const int n = opts.rho_grid;
  const double cell = (hi - lo) / (n - 1);
  double best_v = -std::numeric_limits<double>::infinity();
  double best_x = lo;
  for (int i = 0; i < n; ++i) {
    const double x = (i == n - 1) ? hi : lo + i * cell;
    const double v = min_over(fns, x);
    if (v > best_v || (v == best_v && std::abs(x) < std::abs(best_x))) {
      best_v = v;
      best_x = x;
    }
  }

  // Golden-section refinement inside the winning cell's neighborhood. Only a
  // strict improvement may move the result off the grid answer.
  double a = std::max(lo, best_x - cell);
  double b = std::min(hi, best_x + cell);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = min_over(fns, x1);
  double f2 = min_over(fns, x2);
  for (int it = 0; it < 80; ++it) {
    if (b - a < 1e-12) break;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = min_over(fns, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = min_over(fns, x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double vm = min_over(fns, xm);
  if (vm > best_v) {
    best_v = vm;
    best_x = xm;
  }
  return {best_v, Rho(best_x)};
}

std::vector<RhoFn> theorem1_terms_102(const ChannelConfig& cfg,
                                      SumCapacityCache& cm) {
  cfg.validate();
  require_compatible(cm, cfg);
  const double fc0 = f_c(Rho(0.0), cfg);
  return {
      [cfg](Rho r) { return f_a(r, cfg); },
      [cfg](Rho r) { return f_b(r, cfg); },
      [fc0](Rho) { return fc0; },
      [&cm](Rho r) { return cm(r); },
  };
}

std::vector<RhoFn> theorem1_terms_101(const ChannelConfig& cfg,
                                      SumCapacityCache& cm) {
  std::vector<RhoFn> fns = theorem1_terms_102(cfg, cm);
  fns.push_back([cfg, &cm](Rho r) { return 0.5 * (f_c(r, cfg) + cm(r)); });
  return fns;
}

MaxMinResult cutset_bound_102(const ChannelConfig& cfg,
                              const OptimizerOptions& opts) {
  SumCapacityCache cm(cfg, opts);
  return cutset_bound_102(cfg, opts, cm);
}

MaxMinResult cutset_bound_102(const ChannelConfig& cfg,
                              const OptimizerOptions& opts,
                              SumCapacityCache& cm) {
  return maximize_min(theorem1_terms_102(cfg, cm), Interval(-1.0, 1.0), opts);
}

MaxMinResult bound_101(XSelector x_selector, const ChannelConfig& cfg,
                       const OptimizerOptions& opts) {
  SumCapacityCache cm(cfg, opts);
  return bound_101(x_selector, cfg, opts, cm);
}

MaxMinResult bound_101(XSelector x_selector, const ChannelConfig& cfg,
                       const OptimizerOptions& opts, SumCapacityCache& cm) {
  const double x = x_selector == XSelector::UseA ? cfg.a : cfg.b;
  const Interval domain = interval_a_x(x, cfg);
  return maximize_min(theorem1_terms_101(cfg, cm), domain, opts);
}

double simple_cutset(const ChannelConfig& cfg, const OptimizerOptions& opts) {
  SumCapacityCache cm(cfg, opts);
  return simple_cutset(cfg, opts, cm);
}

double simple_cutset(const ChannelConfig& cfg, const OptimizerOptions& opts,
                     SumCapacityCache& cm) {
  cfg.validate();
  require_compatible(cm, cfg);
  const std::vector<RhoFn> sum_cap = {[&cm](Rho r) { return cm(r); }};
  const double max_cm = maximize_min(sum_cap, Interval(-1.0, 1.0), opts).value;
  return std::min(f_c(Rho(0.0), cfg), max_cm);
}

BoundReport theorem1_bound(const ChannelConfig& cfg,
                           const OptimizerOptions& opts) {
  SumCapacityCache cm(cfg, opts);
  return theorem1_bound(cfg, opts, cm);
}

BoundReport theorem1_bound(const ChannelConfig& cfg,
                           const OptimizerOptions& opts,
                           SumCapacityCache& cm) {
  cfg.validate();
  require_compatible(cm, cfg);
  const MaxMinResult c102 = cutset_bound_102(cfg, opts, cm);
  const MaxMinResult a101 = bound_101(XSelector::UseA, cfg, opts, cm);
  const MaxMinResult b101 = bound_101(XSelector::UseB, cfg, opts, cm);
  const double simple = simple_cutset(cfg, opts, cm);

  BoundReport report;
  report.simple_cutset = simple;
  report.cutset_102 = c102.value;
  report.bound_101_a = a101.value;
  report.bound_101_b = b101.value;
  report.theorem1 = std::min({c102.value, a101.value, b101.value});
  report.argmax_rho_102 = c102.argmax;
  report.argmax_rho_101_a = a101.argmax;
  report.argmax_rho_101_b = b101.argmax;

  if (!(report.theorem1 <= report.cutset_102) ||
      !(report.cutset_102 <= report.simple_cutset + 1e-9)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "bound ordering violated: theorem1=" << report.theorem1
        << " cutset_102=" << report.cutset_102
        << " simple_cutset=" << report.simple_cutset;
    throw InvariantViolation(msg.str());
  }
  return report;
}

}  // namespace diamond
