#include "diamond/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diamond {

void ChannelConfig::validate() const {
  const double fields[] = {a, b, p1, p2, c1, c2};
  for (double v : fields) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(
          "channel configuration fields must all be finite");
    }
  }
  if (p1 < 0.0 || p2 < 0.0) {
    throw std::invalid_argument("power budgets p1, p2 must be nonnegative");
  }
  if (c1 < 0.0 || c2 < 0.0) {
    throw std::invalid_argument("link capacities c1, c2 must be nonnegative");
  }
}

bool ChannelConfig::is_valid() const {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

namespace {
constexpr double kBoundaryGrace = 1e-12;
}  // namespace

Rho::Rho(double value) : value_(value) {
  if (!std::isfinite(value_)) {
    throw std::invalid_argument("correlation coefficient must be finite");
  }
  if (value_ > 1.0) {
    if (value_ <= 1.0 + kBoundaryGrace) {
      value_ = 1.0;
    } else {
      throw std::invalid_argument(
          "correlation coefficient must lie in [-1, 1]");
    }
  } else if (value_ < -1.0) {
    if (value_ >= -1.0 - kBoundaryGrace) {
      value_ = -1.0;
    } else {
      throw std::invalid_argument(
          "correlation coefficient must lie in [-1, 1]");
    }
  }
}

Psd2::Psd2(double m11, double m12, double m22)
    : m11_(m11), m12_(m12), m22_(m22) {
  if (!std::isfinite(m11_) || !std::isfinite(m12_) || !std::isfinite(m22_)) {
    throw std::invalid_argument("matrix entries must be finite");
  }
  const double tol = psd_tolerance();
  if (m11_ < 0.0) {
    if (m11_ < -tol) {
      throw std::invalid_argument(
          "matrix is not positive semidefinite (negative first diagonal)");
    }
    m11_ = 0.0;
  }
  if (m22_ < 0.0) {
    if (m22_ < -tol) {
      throw std::invalid_argument(
          "matrix is not positive semidefinite (negative second diagonal)");
    }
    m22_ = 0.0;
  }
  if (det() < -tol) {
    throw std::invalid_argument(
        "matrix is not positive semidefinite (negative determinant)");
  }
}

double Psd2::psd_tolerance() const {
  return 1e-12 * std::max({1.0, m11_, m22_});
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo_) || !std::isfinite(hi_)) {
    throw std::invalid_argument("interval endpoints must be finite");
  }
  if (lo_ > hi_) {
    throw std::invalid_argument("interval endpoints must satisfy lo <= hi");
  }
  if (lo_ < -1.0 || hi_ > 1.0) {
    throw std::invalid_argument("interval must lie within [-1, 1]");
  }
}

Psd2 build_constraint(Rho rho, const ChannelConfig& cfg) {
  cfg.validate();
  const double off = static_cast<double>(rho) * std::sqrt(cfg.p1 * cfg.p2);
  return Psd2(cfg.p1, off, cfg.p2);
}

Psd2 psd_sqrt(const Psd2& m) {
  const double tr = m.trace();
  if (tr <= 0.0) {
    // PSD with zero trace is the zero matrix.
    return Psd2(0.0, 0.0, 0.0);
  }
  const double root_det = std::sqrt(std::max(0.0, m.det()));
  const double denom = std::sqrt(tr + 2.0 * root_det);
  return Psd2((m.m11() + root_det) / denom, m.m12() / denom,
              (m.m22() + root_det) / denom);
}

double quadratic_form(double h1, double h2, const Psd2& m) {
  return h1 * h1 * m.m11() + 2.0 * h1 * h2 * m.m12() + h2 * h2 * m.m22();
}

}  // namespace diamond
