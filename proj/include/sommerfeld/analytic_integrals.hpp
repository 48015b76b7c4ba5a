#pragma once

// Closed forms of the three action integrals
//   radial         int sqrt(-A + B/r - C/r^2) dr            = pi (B/(2 sqrt A) - sqrt C)
//   trigonometric  int sqrt(A - B/cos^2 t - C/sin^2 t) dt   = (pi/2)(sqrt A - sqrt B - sqrt C)
//   hyperbolic     int sqrt(sech^2 x - eps) dx             = pi (1 - sqrt eps)
// each taken between the two zeros of the integrand.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sommerfeld/error.hpp"
#include "sommerfeld/potential_catalog.hpp"

namespace sommerfeld {

namespace detail {

inline void require_positive_a(double A) {
  if (!(A > 0.0)) fail(ErrorCode::InvalidParameter, "A > 0 required (got " + fmt(A) + ")");
}

inline void require_nonneg(double v, const char* name) {
  if (!(v >= 0.0)) {
    fail(ErrorCode::InvalidParameter, std::string(name) + " >= 0 required (got " + fmt(v) + ")");
  }
}

}  // namespace detail

// C = 0 is admitted: the lower turning point moves to r = 0 and the closed
// form still holds.
inline double sommerfeld_integral(double A, double B, double C) {
  detail::require_positive_a(A);
  detail::require_nonneg(C, "C");
  const double threshold = 2.0 * std::sqrt(A * C);
  if (B < threshold) {
    fail(ErrorCode::NoClassicalRegion,
         "B = " + detail::fmt(B) + " < 2 sqrt(AC) = " + detail::fmt(threshold));
  }
  return std::max(0.0, std::numbers::pi * (B / (2.0 * std::sqrt(A)) - std::sqrt(C)));
}

inline double trig_integral(double A, double B, double C) {
  detail::require_positive_a(A);
  detail::require_nonneg(B, "B");
  detail::require_nonneg(C, "C");
  const double gap = std::sqrt(A) - std::sqrt(B) - std::sqrt(C);
  if (gap < 0.0) {
    fail(ErrorCode::NoClassicalRegion, "sqrt A < sqrt B + sqrt C");
  }
  return 0.5 * std::numbers::pi * gap;
}

inline double hyperbolic_integral(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    fail(ErrorCode::OutOfRange, "eps must lie in (0, 1] (got " + detail::fmt(eps) + ")");
  }
  return std::numbers::pi * (1.0 - std::sqrt(eps));
}

// Parameter derivatives of the closed forms.
inline double sommerfeld_integral_dB(double A) { return std::numbers::pi / (2.0 * std::sqrt(A)); }
inline double trig_integral_dA(double A) { return std::numbers::pi / (4.0 * std::sqrt(A)); }
inline double hyperbolic_integral_deps(double eps) {
  return -std::numbers::pi / (2.0 * std::sqrt(eps));
}

// With T = cos 2t the trigonometric integral splits into two radial ones in
// r = 1 - T and r = 1 + T. Returns both pieces; their sum is trig_integral.
inline std::pair<double, double> trig_integral_pieces(double A, double B, double C) {
  trig_integral(A, B, C);  // validates
  const double left = 0.25 * sommerfeld_integral(A, 2.0 * (A - B + C), 4.0 * C);
  const double right = 0.25 * sommerfeld_integral(A, 2.0 * (A + B - C), 4.0 * B);
  return {left, right};
}

struct TurningPoints {
  double lo = 0.0;
  double hi = 0.0;
};

// Roots T1 <= T2 of A T^2 - 2(B - C) T - (A - 2B - 2C) = 0, the turning points
// of the trigonometric integrand in T = cos 2t.
inline TurningPoints trig_cos2_roots(double A, double B, double C) {
  trig_integral(A, B, C);
  const double shifted = A - B - C;
  const double disc = std::max(0.0, shifted * shifted - 4.0 * B * C);
  const double root = std::sqrt(disc);
  return {(B - C - root) / A, (B - C + root) / A};
}

// Radial: 0 <= r1 <= r2 solving -A r^2 + B r - C = 0 (cancellation-free form).
// Trigonometric: the angles t1 <= t2 in (0, pi/2) with T = cos 2t.
inline TurningPoints quadratic_turning_points(double A, double B, double C,
                                              Family family = Family::radial) {
  if (family == Family::trigonometric) {
    const auto t = trig_cos2_roots(A, B, C);
    return {0.5 * std::acos(std::min(1.0, t.hi)), 0.5 * std::acos(std::max(-1.0, t.lo))};
  }
  if (family != Family::radial) {
    fail(ErrorCode::NotApplicable, "hyperbolic turning points are +-arcsech(sqrt eps)");
  }
  sommerfeld_integral(A, B, C);
  const double disc = std::max(0.0, B * B - 4.0 * A * C);
  const double q = 0.5 * (B + std::sqrt(disc));
  return {C / q, q / A};
}

// Invert sech^2 x = eps.
inline double hyperbolic_turning_point(double eps) {
  hyperbolic_integral(eps);
  return std::acosh(1.0 / std::sqrt(eps));
}

}  // namespace sommerfeld
