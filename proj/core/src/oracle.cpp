#include "diamond/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "diamond/closed_forms.hpp"
#include "diamond/mimo_bc.hpp"

namespace diamond {

double grid_sum_capacity(Rho rho, const ChannelConfig& cfg, int ntheta,
                         int nq) {
  cfg.validate();
  if (ntheta < 3 || nq < 3) {
    throw std::invalid_argument("grid_sum_capacity requires ntheta, nq >= 3");
  }
  const Psd2 k = build_constraint(rho, cfg);
  const Psd2 ks = psd_sqrt(k);

  double best = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < ntheta; ++t) {
    const double theta = (static_cast<double>(t) * std::numbers::pi) / ntheta;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int i = 0; i < nq; ++i) {
      const double q1 = static_cast<double>(i) / (nq - 1);
      for (int j = 0; j < nq; ++j) {
        const double q2 = static_cast<double>(j) / (nq - 1);
        // Q = R(theta) diag(q1, q2) R(theta)^T, then B1 = Ks Q Ks.
        const double q11 = q1 * c * c + q2 * s * s;
        const double q12 = (q1 - q2) * c * s;
        const double q22 = q1 * s * s + q2 * c * c;
        const double a11 = ks.m11() * q11 + ks.m12() * q12;
        const double a12 = ks.m11() * q12 + ks.m12() * q22;
        const double a21 = ks.m12() * q11 + ks.m22() * q12;
        const double a22 = ks.m12() * q12 + ks.m22() * q22;
        const double b11 = a11 * ks.m11() + a12 * ks.m12();
        const double b22 = a21 * ks.m12() + a22 * ks.m22();
        const double b12 =
            0.5 * ((a11 * ks.m12() + a12 * ks.m22()) +
                   (a21 * ks.m11() + a22 * ks.m12()));
        const Psd2 b1(b11, b12, b22);
        const Psd2 b2(k.m11() - b11, k.m12() - b12, k.m22() - b22);
        for (DpcOrder order : {DpcOrder::User2First, DpcOrder::User1First}) {
          const double bits = dpc_sum_rate({b1, b2, order}, cfg);
          if (bits > best) best = bits;
        }
      }
    }
  }
  return best;
}

MaxMinResult grid_max_min(const std::vector<RhoFn>& fns, Interval domain,
                          int n) {
  if (fns.empty()) {
    throw std::invalid_argument("grid_max_min requires at least one function");
  }
  if (n < 3) {
    throw std::invalid_argument("grid_max_min requires n >= 3");
  }
  auto min_over = [&fns](double x) {
    double m = std::numeric_limits<double>::infinity();
    const Rho r(x);
    for (const auto& f : fns) m = std::min(m, f(r));
    return m;
  };
  const double lo = domain.lo();
  const double hi = domain.hi();
  if (hi <= lo) {
    return {min_over(lo), Rho(lo)};
  }
  const double cell = (hi - lo) / (n - 1);
  double best_v = -std::numeric_limits<double>::infinity();
  double best_x = lo;
  for (int i = 0; i < n; ++i) {
    const double x = (i == n - 1) ? hi : lo + i * cell;
    const double v = min_over(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return {best_v, Rho(best_x)};
}

double n3_identity_residual(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const double r = rho;
  if (cfg.b == 0.0) {
    throw std::domain_error("n3 identity requires b != 0");
  }
  if (cfg.p1 <= 0.0 || cfg.p2 <= 0.0) {
    throw std::domain_error("n3 identity requires positive powers");
  }
  if (r == 0.0 || std::signbit(r) != std::signbit(cfg.b)) {
    throw std::domain_error(
        "n3 identity requires rho nonzero with the sign of b");
  }
  const double rb = rho_x(cfg.b, cfg);
  if (std::abs(r) > std::abs(rb)) {
    throw std::domain_error("n3 identity requires |rho| <= |rho_b|");
  }

  const double sp = std::sqrt(cfg.p1 * cfg.p2);
  const double n3 = cfg.b * sp * (1.0 / r - r) - 1.0;
  const double om = 1.0 - r * r;
  const double num =
      (om * cfg.b * cfg.b * cfg.p1 + 1.0 + n3) * (om * cfg.p2 + 1.0 + n3);
  const double den =
      (1.0 + n3) *
      (cfg.b * cfg.b * cfg.p1 + cfg.p2 + 2.0 * cfg.b * r * sp + 1.0 + n3);
  const double lhs = 0.5 * std::log2(num / den);
  const double rhs = -0.5 * std::log2(1.0 / om);
  return std::abs(lhs - rhs);
}

}  // namespace diamond
