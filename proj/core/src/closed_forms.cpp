#include "diamond/closed_forms.hpp"

#include <cmath>
#include <limits>

namespace diamond {

ClosedFormValue f_a(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const double r = rho;
  const double gain = std::max(cfg.a * cfg.a, 1.0);
  return cfg.c1 + 0.5 * std::log2(1.0 + gain * (1.0 - r * r) * cfg.p2);
}

ClosedFormValue f_b(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const double r = rho;
  const double gain = std::max(cfg.b * cfg.b, 1.0);
  return cfg.c2 + 0.5 * std::log2(1.0 + gain * (1.0 - r * r) * cfg.p1);
}

ClosedFormValue f_c(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const double r = rho;
  const double om = 1.0 - r * r;
  if (om <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return cfg.c1 + cfg.c2 - 0.5 * std::log2(1.0 / om);
}

Rho rho_x(double x, const ChannelConfig& cfg) {
  cfg.validate();
  if (x == 0.0 || cfg.p1 * cfg.p2 == 0.0) {
    throw std::domain_error(
        "rho_x is undefined at x = 0 or zero power product; "
        "interval_a_x handles these by collapsing to [0, 0]");
  }
  const double t = 1.0 / (4.0 * x * x * cfg.p1 * cfg.p2);
  // (sqrt(1+t) - sqrt(t)) == 1 / (sqrt(1+t) + sqrt(t)), but the right-hand
  // form has no cancellation for large |x| * sqrt(p1*p2).
  const double mag = 1.0 / (std::sqrt(1.0 + t) + std::sqrt(t));
  return Rho(x > 0.0 ? mag : -mag);
}

Interval interval_a_x(double x, const ChannelConfig& cfg) {
  cfg.validate();
  if (x == 0.0 || cfg.p1 * cfg.p2 == 0.0) {
    return Interval(0.0, 0.0);
  }
  const double r = rho_x(x, cfg);
  return x >= 0.0 ? Interval(0.0, r) : Interval(r, 0.0);
}

ClosedFormValue p2p_rate(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const double r = rho;
  const double arg = cfg.b * cfg.b * cfg.p1 + cfg.p2 + 1.0 +
                     2.0 * cfg.b * r * std::sqrt(cfg.p1 * cfg.p2);
  return 0.5 * std::log2(arg);
}

}  // namespace diamond
