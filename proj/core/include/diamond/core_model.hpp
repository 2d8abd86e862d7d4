#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

/// Thrown when a computed result violates an internal consistency guarantee
/// (as opposed to invalid caller input, which throws std::invalid_argument
/// or std::domain_error). The CLI maps this to exit code 2.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One channel configuration: the two cross gains, the two transmit power
/// budgets, and the two finite-capacity link rates (bits per channel use).
///
/// Receive directions are h1 = [1, a] and h2 = [b, 1] with unit noise
/// variance at both destinations.
struct ChannelConfig {
  double a = 0.0;   ///< cross gain, transmitter 1 -> destination 2
  double b = 0.0;   ///< cross gain, transmitter 2 -> destination 1
  double p1 = 0.0;  ///< average power budget of transmitter 1 (>= 0)
  double p2 = 0.0;  ///< average power budget of transmitter 2 (>= 0)
  double c1 = 0.0;  ///< capacity of link 1, bits per channel use (>= 0)
  double c2 = 0.0;  ///< capacity of link 2, bits per channel use (>= 0)

  /// Throws std::invalid_argument unless all fields are finite and
  /// p1, p2, c1, c2 are nonnegative. Gains may be any finite real.
  void validate() const;
  bool is_valid() const;
};

/// A correlation coefficient, guaranteed to lie in [-1, 1]. Implicitly
/// convertible from and to double; construction rejects out-of-range values
/// (values within 1e-12 of the boundary are snapped onto it so that interval
/// endpoints survive floating-point drift).
class Rho {
 public:
  Rho() : value_(0.0) {}
  Rho(double value);  // NOLINT(google-explicit-constructor): by-design implicit
  operator double() const { return value_; }
  double value() const { return value_; }

 private:
  double value_;
};

/// A symmetric positive-semidefinite 2x2 matrix, stored as its upper
/// triangle. Construction validates semidefiniteness within a relative
/// tolerance of 1e-12 * max(1, m11, m22); diagonal entries that are negative
/// by no more than that tolerance are clamped to zero so that rank-deficient
/// boundary cases built from rounded arithmetic remain usable.
class Psd2 {
 public:
  Psd2() : m11_(0.0), m12_(0.0), m22_(0.0) {}
  Psd2(double m11, double m12, double m22);

  double m11() const { return m11_; }
  double m12() const { return m12_; }
  double m22() const { return m22_; }
  double det() const { return m11_ * m22_ - m12_ * m12_; }
  double trace() const { return m11_ + m22_; }
  /// The absolute tolerance used by the semidefiniteness check.
  double psd_tolerance() const;

 private:
  double m11_, m12_, m22_;
};

/// A closed subinterval of [-1, 1] (the search domain of the correlation
/// coefficient). Construction enforces lo <= hi and both endpoints in range.
class Interval {
 public:
  Interval(double lo, double hi);
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool degenerate() const { return hi_ <= lo_; }

 private:
  double lo_, hi_;
};

/// The covariance constraint matrix [[p1, rho*sqrt(p1*p2)], [., p2]].
/// Positive semidefinite for every rho in [-1, 1].
Psd2 build_constraint(Rho rho, const ChannelConfig& cfg);

/// The symmetric PSD square root S of m, with S*S = m to within 1e-10
/// relative Frobenius error. Uses the closed form
///   S = (m + sqrt(det(m)) * I) / sqrt(trace(m) + 2*sqrt(det(m))),
/// which is algebraically identical to diagonalizing m and taking
/// elementwise square roots of its eigenvalues, and remains exact for
/// rank-deficient input. The zero matrix maps to itself.
Psd2 psd_sqrt(const Psd2& m);

/// The quadratic form [h1 h2] * m * [h1 h2]^T
///   = h1^2*m11 + 2*h1*h2*m12 + h2^2*m22.
/// Nonnegative up to roundoff for PSD m; the raw value is returned unclamped.
double quadratic_form(double h1, double h2, const Psd2& m);

}  // namespace diamond
