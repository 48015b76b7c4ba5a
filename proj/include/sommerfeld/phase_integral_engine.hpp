#pragma once

// Numerical Bohr-Sommerfeld pipeline: scan for the classically allowed region,
// refine the turning points, integrate sqrt(p^2) between them and solve
//   int p dx = pi (k + 1/2)
// for E. Nothing here consults the closed forms.

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sommerfeld/analytic_integrals.hpp"
#include "sommerfeld/closed_form_spectra.hpp"
#include "sommerfeld/error.hpp"
#include "sommerfeld/potential_catalog.hpp"
#include "sommerfeld/quadrature.hpp"

namespace sommerfeld {

inline constexpr double default_phase_tol = 1e-10;

struct PhaseIntegralResult {
  double value = 0.0;
  TurningPoints turning_points;
  int quadrature_nodes = 0;
  double est_error = 0.0;
};

namespace detail {

// Scan coordinate t -> x. Radial kinds scan in log x, the rest linearly.
struct ScanMap {
  Family family;
  double lo = 0.0;  // trig: domain start; radial/hyperbolic unused
  double width = 1.0;

  double x(double t) const {
    switch (family) {
      case Family::radial: return std::exp(t);
      case Family::trigonometric: return lo + width * t;
      case Family::hyperbolic: return t;
    }
    return t;
  }
};

inline ScanMap scan_map(const PotentialModel& m) {
  ScanMap s{m.family()};
  if (s.family == Family::trigonometric) {
    s.lo = m.domain().lo;
    s.width = m.domain().hi - m.domain().lo;
  }
  return s;
}

// Bisect a sign change of p^2 between x_neg (p^2 <= 0) and x_pos (p^2 > 0)
// down to adjacent doubles.
template <class F>
double bisect_root(const F& p2, double x_neg, double x_pos) {
  for (int it = 0; it < 2200; ++it) {
    const double mid = 0.5 * (x_neg + x_pos);
    if (mid == x_neg || mid == x_pos) break;
    if (p2(mid) > 0.0) {
      x_pos = mid;
    } else {
      x_neg = mid;
    }
  }
  return 0.5 * (x_neg + x_pos);
}

}  // namespace detail

inline TurningPoints find_turning_points(const PotentialModel& model, double E) {
  if (!model.bound_range().contains(E)) {
    fail(ErrorCode::OutOfBoundRange, "E = " + detail::fmt(E) + " outside the bound range");
  }
  const auto map = detail::scan_map(model);
  auto p2 = [&](double x) { return model.q(x, E); };
  auto p2t = [&](double t) { return p2(map.x(t)); };

  constexpr int n_scan = 256;
  double t_first = 0.0;
  double t_last = 0.0;
  double t_step = 0.0;
  switch (map.family) {
    case Family::radial:
      t_first = std::log(1e-10);
      t_last = std::log(1e10);
      break;
    case Family::trigonometric:
      t_first = 0.5 / n_scan;
      t_last = 1.0 - 0.5 / n_scan;
      break;
    case Family::hyperbolic:
      t_first = -50.0;
      t_last = 50.0;
      break;
  }
  t_step = (t_last - t_first) / (n_scan - 1);

  std::vector<double> vals(n_scan);
  int imax = 0;
  for (int i = 0; i < n_scan; ++i) {
    vals[i] = p2t(t_first + i * t_step);
    if (vals[i] > vals[imax]) imax = i;
  }

  // p^2 is unimodal for every catalog kind; golden-section on the cell pair
  // around the best scan point catches wells narrower than the scan step.
  double a = t_first + std::max(0, imax - 1) * t_step;
  double b = t_first + std::min(n_scan - 1, imax + 1) * t_step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = p2t(c);
  double fd = p2t(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::fabs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = p2t(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = p2t(d);
    }
  }
  double t_peak = fc > fd ? c : d;
  double peak = std::max(fc, fd);
  if (vals[imax] > peak) {
    t_peak = t_first + imax * t_step;
    peak = vals[imax];
  }

  const double degenerate_band = 1e-12 * std::max(1.0, std::fabs(E));
  if (peak <= 0.0) {
    if (peak >= -degenerate_band) {
      fail(ErrorCode::DegenerateWell,
           "turning points coalesce at x = " + detail::fmt(map.x(t_peak)));
    }
    fail(ErrorCode::NoClassicalRegion, "p^2 <= 0 everywhere at E = " + detail::fmt(E));
  }

  // Walk outwards from the peak to the first nonpositive scan value; past
  // the scan range push towards the domain ends.
  auto outward = [&](int dir) -> double {
    const double pos = (t_peak - t_first) / t_step;
    int i = dir < 0 ? static_cast<int>(std::floor(pos)) : static_cast<int>(std::ceil(pos));
    for (; i >= 0 && i < n_scan; i += dir) {
      if (vals[i] <= 0.0) return t_first + i * t_step;
    }
    double t = dir < 0 ? t_first : t_last;
    for (int k = 0; k < 64; ++k) {
      switch (map.family) {
        case Family::radial: t += dir * std::log(1e10); break;
        case Family::trigonometric: t = dir < 0 ? t / 16.0 : 1.0 - (1.0 - t) / 16.0; break;
        case Family::hyperbolic: t += dir * 50.0; break;
      }
      const double x = map.x(t);
      if (!model.domain().contains(x) || !std::isfinite(x)) break;
      if (p2(x) <= 0.0) return t;
      if (map.family == Family::radial && (x < 1e-300 || x > 1e300)) break;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  TurningPoints tp;
  const double x_peak = map.x(t_peak);
  const double t_left = outward(-1);
  if (std::isnan(t_left)) {
    if (map.family != Family::radial) {
      fail(ErrorCode::NoClassicalRegion, "allowed region reaches the domain edge");
    }
    tp.lo = 0.0;  // C = 0: p^2 -> +inf at the origin, integrable
  } else {
    tp.lo = detail::bisect_root(p2, map.x(t_left), x_peak);
  }
  const double t_right = outward(+1);
  if (std::isnan(t_right)) {
    fail(ErrorCode::NoClassicalRegion, "allowed region is unbounded at E = " + detail::fmt(E));
  }
  tp.hi = detail::bisect_root(p2, map.x(t_right), x_peak);

  if (!(tp.hi - tp.lo > 4.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::fabs(tp.lo), std::fabs(tp.hi)))) {
    fail(ErrorCode::DegenerateWell, "turning points coalesce at x = " + detail::fmt(tp.lo));
  }
  return tp;
}

inline PhaseIntegralResult phase_integral(const PotentialModel& model, double E,
                                          double tol = default_phase_tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tol > 0 required");
  PhaseIntegralResult r;
  r.turning_points = find_turning_points(model, E);
  auto p2 = [&](double x) { return model.q(x, E); };
  const auto est =
      quadrature::turning_point_integral(p2, r.turning_points.lo, r.turning_points.hi, tol);
  r.value = est.value;
  r.quadrature_nodes = est.nodes;
  r.est_error = est.error;
  if (!est.converged) {
    fail(ErrorCode::ToleranceNotMet, "phase integral at E = " + detail::fmt(E) + ": best " +
                                         detail::fmt(est.value) + ", est_error " +
                                         detail::fmt(est.error) + " after " +
                                         std::to_string(est.nodes) + " nodes");
  }
  return r;
}

namespace detail {

// Phase as a function of E over the whole bound range: zero where no
// classical region exists, which keeps it monotone and continuous.
inline double phase_or_zero(const PotentialModel& model, double E, double tol) {
  try {
    return phase_integral(model, E, tol).value;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoClassicalRegion || e.code() == ErrorCode::DegenerateWell) {
      return 0.0;
    }
    throw;
  }
}

}  // namespace detail

inline EnergyLevel quantize_level(const PotentialModel& model, int n_r,
                                  double tol = default_phase_tol) {
  if (!model.langer() && model.family() != Family::hyperbolic) {
    fail(ErrorCode::NotApplicable, "the semiclassical rule needs the Langer-modified momentum");
  }
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tol > 0 required");
  if (n_r < 0) fail(ErrorCode::InvalidParameter, "n_r >= 0 required");
  require_wkb_branch(model);
  const int k = n_r - model.index_offset();
  if (k < 0) {
    fail(ErrorCode::NoSuchBoundState,
         "this form of the equation has no solution with n_r = " + std::to_string(n_r));
  }

  const double target = std::numbers::pi * (k + 0.5);
  const double quad_tol = 0.1 * tol;
  auto phase = [&](double E) { return detail::phase_or_zero(model, E, quad_tol); };
  const Interval range = model.bound_range();

  // Lower bracket: below the well minimum the phase vanishes.
  double ea = 0.0;
  if (range.lo_finite()) {
    ea = std::nextafter(range.lo, range.hi);
  } else {
    ea = -1.0;
    while (phase(ea) >= target) {
      ea *= 2.0;
      if (ea < -1e300) {
        fail(ErrorCode::BracketingFailed,
             "phase stays above pi(k+1/2) down to E = " + detail::fmt(ea));
      }
    }
  }
  double fa = phase(ea) - target;
  if (fa >= 0.0) {
    fail(ErrorCode::BracketingFailed, "phase already exceeds the target at the range bottom");
  }

  // Upper bracket: geometric approach to a finite top, doubling otherwise.
  double eb = ea;
  double fb = fa;
  for (int it = 0;; ++it) {
    if (range.hi_finite()) {
      eb = range.hi - 0.5 * (range.hi - ea);
      if (eb == ea || eb >= range.hi || it > 200) {
        fail(ErrorCode::NoSuchBoundState,
             "phase never reaches pi(k+1/2) below E = " + detail::fmt(range.hi) +
                 "; the well holds fewer than " + std::to_string(k + 1) + " levels");
      }
    } else {
      eb = ea + std::max(1.0, std::fabs(ea));
      if (!std::isfinite(eb)) {
        fail(ErrorCode::BracketingFailed, "scan up to E = " + detail::fmt(ea) + " failed");
      }
    }
    fb = phase(eb) - target;
    if (fb > 0.0) break;
    ea = eb;
    fa = fb;
  }

  auto f = [&](double E) { return phase(E) - target; };
  std::uintmax_t max_iter = 200;
  boost::math::tools::eps_tolerance<double> stop(50);
  auto [lo, hi] = boost::math::tools::toms748_solve(f, ea, eb, fa, fb, stop, max_iter);
  double E = 0.5 * (lo + hi);
  double residual = std::fabs(f(E));
  bool resolved = residual <= tol;
  if (!resolved) {
    // Near |E| -> 1 the phase can be steep enough that one ulp of E moves it
    // by more than tol; bisect down to adjacent doubles and keep the better end.
    double flo = f(lo);
    double fhi = f(hi);
    for (int it = 0; it < 64 && std::nextafter(lo, hi) < hi; ++it) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
    }
    const bool adjacent = !(std::nextafter(lo, hi) < hi);
    E = std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
    residual = std::min(std::fabs(flo), std::fabs(fhi));
    resolved = residual <= tol || (adjacent && (flo < 0.0) != (fhi < 0.0));
  }
  if (!resolved) {
    fail(ErrorCode::ToleranceNotMet,
         "quantization residual " + detail::fmt(residual) + " at E = " + detail::fmt(E));
  }
  return {E, Method::wkb_numeric, state_of(model, n_r)};
}

inline std::vector<EnergyLevel> wkb_spectrum(const PotentialModel& model, int count,
                                             double tol = default_phase_tol) {
  if (count < 1) fail(ErrorCode::InvalidParameter, "count >= 1 required");
  std::vector<EnergyLevel> out;
  const int first = model.index_offset();
  for (int n = first; n < first + count; ++n) {
    try {
      out.push_back(quantize_level(model, n, tol));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoSuchBoundState) break;
      throw;
    }
  }
  return out;
}

}  // namespace sommerfeld
