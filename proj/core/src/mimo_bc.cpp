#include "diamond/mimo_bc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace diamond {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// y = m * h for symmetric m.
void sym_mul(const Psd2& m, double hx, double hy, double& ox, double& oy) {
  ox = m.m11() * hx + m.m12() * hy;
  oy = m.m12() * hx + m.m22() * hy;
}

// h1^T m h2 for symmetric m.
double bilinear_form(double h1x, double h1y, double h2x, double h2y,
                     const Psd2& m) {
  return m.m11() * h1x * h2x + m.m12() * (h1x * h2y + h1y * h2x) +
         m.m22() * h1y * h2y;
}

// Shared state of the saturated-constraint search at one rho: everything
// that does not depend on (theta, q1, q2).
struct SearchContext {
  Psd2 k;
  Psd2 ks;       // k^{1/2}
  double w1x, w1y;  // ks * h1
  double w2x, w2y;  // ks * h2
  double s1, s2;    // h1' k h1, h2' k h2

  // Squared projections of ks*h1 and ks*h2 onto the rotated eigenbasis
  // {(cos t, sin t), (-sin t, cos t)} at one angle.
  struct Proj {
    double p1a, p1b, p2a, p2b;
  };

  Proj projections(double theta) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double d1a = w1x * c + w1y * s;
    const double d1b = -w1x * s + w1y * c;
    const double d2a = w2x * c + w2y * s;
    const double d2b = -w2x * s + w2y * c;
    return {d1a * d1a, d1b * d1b, d2a * d2a, d2b * d2b};
  }

  // The product-form objective 2^(2 * sum rate) for b1 parameterized by
  // (theta, q1, q2) and b2 = k - b1. A single log2 at the end of the search
  // recovers bits.
  double objective(const Proj& p, double q1, double q2, DpcOrder order) const {
    const double x = q1 * p.p1a + q2 * p.p1b;  // h1' b1 h1
    const double u = q1 * p.p2a + q2 * p.p2b;  // h2' b1 h2
    const double y = s2 - u;                   // h2' b2 h2
    const double w = s1 - x;                   // h1' b2 h1
    if (order == DpcOrder::User2First) {
      return (1.0 + x) * (1.0 + y / (1.0 + u));
    }
    return (1.0 + y) * (1.0 + x / (1.0 + w));
  }

  double objective_at(double theta, double q1, double q2,
                      DpcOrder order) const {
    return objective(projections(theta), q1, q2, order);
  }
};

SearchContext make_context(Rho rho, const ChannelConfig& cfg) {
  SearchContext ctx;
  ctx.k = build_constraint(rho, cfg);
  ctx.ks = psd_sqrt(ctx.k);
  sym_mul(ctx.ks, 1.0, cfg.a, ctx.w1x, ctx.w1y);
  sym_mul(ctx.ks, cfg.b, 1.0, ctx.w2x, ctx.w2y);
  ctx.s1 = quadratic_form(1.0, cfg.a, ctx.k);
  ctx.s2 = quadratic_form(cfg.b, 1.0, ctx.k);
  return ctx;
}

// b1 = ks * (R(theta) diag(q1, q2) R(theta)^T) * ks, symmetrized.
Psd2 allocation_b1(const SearchContext& ctx, double theta, double q1,
                   double q2) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double q11 = q1 * c * c + q2 * s * s;
  const double q22 = q1 * s * s + q2 * c * c;
  const double q12 = (q1 - q2) * c * s;
  const Psd2& ks = ctx.ks;
  // m = Q * ks
  const double a11 = q11 * ks.m11() + q12 * ks.m12();
  const double a12 = q11 * ks.m12() + q12 * ks.m22();
  const double a21 = q12 * ks.m11() + q22 * ks.m12();
  const double a22 = q12 * ks.m12() + q22 * ks.m22();
  // b1 = ks * m
  const double b11 = ks.m11() * a11 + ks.m12() * a21;
  const double b12 = ks.m11() * a12 + ks.m12() * a22;
  const double b21 = ks.m12() * a11 + ks.m22() * a21;
  const double b22 = ks.m12() * a12 + ks.m22() * a22;
  return Psd2(b11, 0.5 * (b12 + b21), b22);
}

}  // namespace

void OptimizerOptions::validate() const {
  if (ntheta < 3 || nq < 3) {
    throw std::invalid_argument("optimizer grids require ntheta, nq >= 3");
  }
  if (rho_grid < 3) {
    throw std::invalid_argument("optimizer requires rho_grid >= 3");
  }
  if (cd_max_iters < 0) {
    throw std::invalid_argument("cd_max_iters must be nonnegative");
  }
  if (!(cd_shrink > 0.0 && cd_shrink < 1.0)) {
    throw std::invalid_argument("cd_shrink must lie in (0, 1)");
  }
  if (!(cd_step_tol > 0.0) || !std::isfinite(cd_step_tol)) {
    throw std::invalid_argument("cd_step_tol must be positive");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("tolerance must be positive");
  }
}

OptimizerOptions OptimizerOptions::with_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tolerance must be positive and finite");
  }
  OptimizerOptions opts;
  opts.tolerance = tol;
  if (tol < 1e-4) {
    const double scale = std::sqrt(1e-4 / tol);
    auto densify = [](int base, double factor, int cap) {
      const double v = std::ceil(base * factor);
      return std::min(cap, std::max(base, static_cast<int>(v)));
    };
    opts.ntheta = densify(33, scale, 513);
    opts.nq = densify(17, scale, 257);
    opts.rho_grid = densify(2001, scale, 20001);
    opts.cd_step_tol = std::min(1e-6, tol / 100.0);
  }
  return opts;
}

double dpc_sum_rate(const DpcAllocation& alloc, const ChannelConfig& cfg) {
  cfg.validate();
  // Feasibility: b1 + b2 must fit under the covariance constraint for some
  // correlation coefficient. The diagonal must fit under the power budgets,
  // and the off-diagonal must be reachable by rho*sqrt(p1*p2) plus the
  // remaining diagonal slack.
  const double t11 = alloc.b1.m11() + alloc.b2.m11();
  const double t22 = alloc.b1.m22() + alloc.b2.m22();
  const double t12 = alloc.b1.m12() + alloc.b2.m12();
  const double tol = 1e-12 * std::max({1.0, cfg.p1, cfg.p2});
  if (t11 > cfg.p1 + tol || t22 > cfg.p2 + tol) {
    throw std::invalid_argument(
        "allocation exceeds the transmit power budget");
  }
  const double slack = std::sqrt(std::max(0.0, cfg.p1 - t11) *
                                 std::max(0.0, cfg.p2 - t22));
  if (std::abs(t12) > std::sqrt(cfg.p1 * cfg.p2) + slack + tol) {
    throw std::invalid_argument(
        "allocation violates the covariance constraint");
  }
  const double x = std::max(0.0, quadratic_form(1.0, cfg.a, alloc.b1));
  const double u = std::max(0.0, quadratic_form(cfg.b, 1.0, alloc.b1));
  const double y = std::max(0.0, quadratic_form(cfg.b, 1.0, alloc.b2));
  const double w = std::max(0.0, quadratic_form(1.0, cfg.a, alloc.b2));
  if (alloc.order == DpcOrder::User2First) {
    return 0.5 * std::log2(1.0 + x) + 0.5 * std::log2(1.0 + y / (1.0 + u));
  }
  return 0.5 * std::log2(1.0 + y) + 0.5 * std::log2(1.0 + x / (1.0 + w));
}

SumCapacityResult sum_capacity(Rho rho, const ChannelConfig& cfg,
                               const OptimizerOptions& opts) {
  cfg.validate();
  opts.validate();
  const SearchContext ctx = make_context(rho, cfg);

  // Coarse grid over both orders. Ties keep the first point scanned.
  double best_f = -1.0;
  double best_th = 0.0, best_q1 = 0.0, best_q2 = 0.0;
  DpcOrder best_order = DpcOrder::User2First;
  std::vector<double> qs(opts.nq);
  for (int i = 0; i < opts.nq; ++i) {
    qs[i] = static_cast<double>(i) / (opts.nq - 1);
  }
  for (int t = 0; t < opts.ntheta; ++t) {
    const double theta = (static_cast<double>(t) * kPi) / opts.ntheta;
    const SearchContext::Proj p = ctx.projections(theta);
    for (DpcOrder order : {DpcOrder::User2First, DpcOrder::User1First}) {
      for (int i = 0; i < opts.nq; ++i) {
        for (int j = 0; j < opts.nq; ++j) {
          const double f = ctx.objective(p, qs[i], qs[j], order);
          if (f > best_f) {
            best_f = f;
            best_th = theta;
            best_q1 = qs[i];
            best_q2 = qs[j];
            best_order = order;
          }
        }
      }
    }
  }
  const double grid_bits = 0.5 * std::log2(best_f);

  // Coordinate descent from the winning grid point, on the winning order
  // only. Strict-improvement acceptance; all steps shrink together once a
  // full pass stalls.
  double th = best_th, q1 = best_q1, q2 = best_q2;
  double cur = ctx.objective_at(th, q1, q2, best_order);
  double steps[3] = {kPi / opts.ntheta, 1.0 / (opts.nq - 1),
                     1.0 / (opts.nq - 1)};
  for (int it = 0;
       it < opts.cd_max_iters &&
       std::max({steps[0], steps[1], steps[2]}) >= opts.cd_step_tol;
       ++it) {
    bool improved = false;
    for (int d = 0; d < 3; ++d) {
      for (int sgn : {1, -1}) {
        double nth = th, nq1 = q1, nq2 = q2;
        double& slot = d == 0 ? nth : (d == 1 ? nq1 : nq2);
        slot += sgn * steps[d];
        if (d == 0) {
          slot = std::fmod(slot, kPi);
          if (slot < 0.0) slot += kPi;
        } else {
          slot = std::min(1.0, std::max(0.0, slot));
        }
        const double v = ctx.objective_at(nth, nq1, nq2, best_order);
        if (v > cur) {
          cur = v;
          th = nth;
          q1 = nq1;
          q2 = nq2;
          improved = true;
        }
      }
    }
    if (!improved) {
      for (double& s : steps) s *= opts.cd_shrink;
    }
  }
  const double refined_bits = 0.5 * std::log2(cur);

  SumCapacityResult result;
  result.bits = std::max(grid_bits, refined_bits);
  result.optimizer_gap_estimate = std::max(0.0, refined_bits - grid_bits);
  const Psd2 b1 = allocation_b1(ctx, th, q1, q2);
  const Psd2 b2(ctx.k.m11() - b1.m11(), ctx.k.m12() - b1.m12(),
                ctx.k.m22() - b1.m22());
  result.best_allocation = DpcAllocation{b1, b2, best_order};
  return result;
}

double coop_capacity(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const Psd2 k = build_constraint(rho, cfg);
  const double g11 = quadratic_form(1.0, cfg.a, k);
  const double g22 = quadratic_form(cfg.b, 1.0, k);
  const double g12 = bilinear_form(1.0, cfg.a, cfg.b, 1.0, k);
  const double det = (1.0 + g11) * (1.0 + g22) - g12 * g12;
  return 0.5 * std::log2(det);
}

SumCapacityCache::SumCapacityCache(const ChannelConfig& cfg,
                                   const OptimizerOptions& opts)
    : cfg_(cfg), opts_(opts) {
  cfg_.validate();
  opts_.validate();
}

double SumCapacityCache::operator()(double rho) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(rho);
    if (it != memo_.end()) return it->second;
  }
  const double bits = sum_capacity(Rho(rho), cfg_, opts_).bits;
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(rho, bits);
  return bits;
}

bool SumCapacityCache::compatible_with(const ChannelConfig& cfg) const {
  return cfg_.a == cfg.a && cfg_.b == cfg.b && cfg_.p1 == cfg.p1 &&
         cfg_.p2 == cfg.p2;
}

}  // namespace diamond
