#pragma once

// Shooting solver for the unmodified equations u'' + q(x, E) u = 0.
//
// The grid is uniform in a variable z with x = g(z): x = e^z for radial kinds,
// a logistic map onto (0, pi/(2 alpha)) for poschl_teller, x = sinh(z)/alpha
// for the sech^2 well. With u = sqrt(g') v the equation becomes
//   v'' + Q v = 0,  Q = g'^2 q + S,  S = {g, z}/2 (Schwarzian),
// S = -1/4 for the log and logistic maps, 1/2 - 3/4 tanh^2 z for sinh. There
// are no singular coefficients at the ends, so Numerov keeps its fourth order
// all the way to x_min.

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sommerfeld/closed_form_spectra.hpp"
#include "sommerfeld/error.hpp"
#include "sommerfeld/phase_integral_engine.hpp"
#include "sommerfeld/potential_catalog.hpp"

namespace sommerfeld {

inline constexpr int default_grid_points = 20001;
inline constexpr double default_numerov_tol = 1e-12;

enum class GridMap { log, logistic, sinh, identity };

struct RadialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 0;
  GridMap map = GridMap::log;
  double z_min = 0.0;
  double z_max = 0.0;
  double h = 0.0;  // uniform step in z
  double length = 0.0;  // logistic: x = length/(1 + e^-z); sinh: x = length sinh z
};

struct ShootingResult {
  double energy = 0.0;
  int nodes = 0;
  double match_residual = 0.0;
  RadialGrid grid;
};

// The dim = 1 oscillator has no centrifugal term; its even states have the
// regular solution subdominant in log x, so it runs on a uniform grid from
// the origin with a parity start instead.
inline bool starts_at_origin(const PotentialModel& model) {
  return model.kind() == PotentialKind::oscillator_nd && model.dim() == 1;
}

inline GridMap grid_map_for(const PotentialModel& model) {
  if (starts_at_origin(model)) return GridMap::identity;
  switch (model.family()) {
    case Family::radial: return GridMap::log;
    case Family::trigonometric: return GridMap::logistic;
    case Family::hyperbolic: return GridMap::sinh;
  }
  return GridMap::identity;
}

inline RadialGrid make_grid(const PotentialModel& model, double x_min, double x_max,
                            int points) {
  if (points < 64) fail(ErrorCode::InvalidParameter, "grid needs at least 64 points");
  const Interval dom = model.domain();
  const bool lo_ok = dom.contains(x_min) || (starts_at_origin(model) && x_min == dom.lo);
  if (!(x_min < x_max) || !lo_ok || !dom.contains(x_max)) {
    fail(ErrorCode::DomainViolation, "grid [" + detail::fmt(x_min) + ", " +
                                         detail::fmt(x_max) + "] not inside the domain");
  }
  RadialGrid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.points = points;
  g.map = grid_map_for(model);
  switch (g.map) {
    case GridMap::log:
      g.z_min = std::log(x_min);
      g.z_max = std::log(x_max);
      break;
    case GridMap::logistic:
      g.length = dom.hi;
      g.z_min = std::log(x_min / (g.length - x_min));
      g.z_max = std::log(x_max / (g.length - x_max));
      break;
    case GridMap::sinh:
      g.length = 1.0 / model.param("alpha");
      g.z_min = std::asinh(x_min / g.length);
      g.z_max = std::asinh(x_max / g.length);
      break;
    case GridMap::identity:
      g.z_min = x_min;
      g.z_max = x_max;
      break;
  }
  g.h = (g.z_max - g.z_min) / (points - 1);
  return g;
}

namespace detail {

struct Mesh {
  std::vector<double> x;
  std::vector<double> y;     // distance to the right end (logistic map only)
  std::vector<double> jac;   // g'(z)
  std::vector<double> shift; // S of the map
  double h = 0.0;
};

inline Mesh build_mesh(const RadialGrid& g) {
  Mesh m;
  m.h = g.h;
  m.x.resize(g.points);
  m.y.resize(g.points);
  m.jac.resize(g.points);
  m.shift.assign(g.points, g.map == GridMap::identity ? 0.0 : -0.25);
  for (int i = 0; i < g.points; ++i) {
    const double z = i + 1 == g.points ? g.z_max : g.z_min + i * g.h;
    switch (g.map) {
      case GridMap::log:
        m.x[i] = std::exp(z);
        m.jac[i] = m.x[i];
        break;
      case GridMap::logistic: {
        m.x[i] = g.length / (1.0 + std::exp(-z));
        m.y[i] = g.length / (1.0 + std::exp(z));
        m.jac[i] = m.x[i] * m.y[i] / g.length;
        break;
      }
      case GridMap::sinh: {
        const double t = std::tanh(z);
        m.x[i] = g.length * std::sinh(z);
        m.jac[i] = g.length * std::cosh(z);
        m.shift[i] = 0.5 - 0.75 * t * t;
        break;
      }
      case GridMap::identity:
        m.x[i] = z;
        m.jac[i] = 1.0;
        break;
    }
  }
  return m;
}

// Numerov coefficients f_i = 1 + h^2 Q_i / 12 at energy E, plus
// c_i = 12 - 12 / f_i kept apart so the small part of the update is not
// rounded against 2 (that rounding grows like 1/h^2).
struct Coeffs {
  std::vector<double> f;
  std::vector<double> c;

  double operator[](std::size_t i) const { return f[i]; }
  std::size_t size() const { return f.size(); }
};

inline Coeffs numerov_f(const PotentialModel& model, const Mesh& mesh, double E) {
  const std::size_t n = mesh.x.size();
  Coeffs k;
  k.f.resize(n);
  k.c.resize(n);
  const double h2 = mesh.h * mesh.h / 12.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double Q = mesh.jac[i] * mesh.jac[i] * model.q(mesh.x[i], E) + mesh.shift[i];
    const double d = h2 * Q;
    k.f[i] = 1.0 + d;
    k.c[i] = 12.0 * d / (1.0 + d);
    // f <= 0 breaks the recursion; f >= 3/2 is past the oscillatory stability limit
    if (!(k.f[i] > 0.0 && k.f[i] < 1.5)) {
      fail(ErrorCode::GridTooCoarse, "h^2 Q / 12 = " + fmt(d) + " at x = " + fmt(mesh.x[i]));
    }
  }
  return k;
}

// Frobenius series u ~ y^s (1 + c1 y + c2 y^2) at a regular singular end,
// y the distance to it. x^2 q = -s(s-1) + beta y + gamma y^2 + ... is read
// off from p2y(y) = y^2 q at y and 2y.
struct Frobenius {
  double s = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double log_u(double y) const { return s * std::log(y) + std::log1p(y * (c1 + c2 * y)); }
};

template <class P2y>
Frobenius frobenius(double s, double y0, const P2y& p2y) {
  const double L = s * (s - 1.0);
  const double r1 = (p2y(y0) + L) / y0;
  const double r2 = (p2y(2.0 * y0) + L) / (2.0 * y0);
  const double gamma = (r2 - r1) / y0;
  const double beta = r1 - gamma * y0;
  Frobenius fr;
  fr.s = s;
  fr.c1 = s > 0.0 ? -beta / (2.0 * s) : 0.0;
  fr.c2 = -(beta * fr.c1 + gamma) / (2.0 * (2.0 * s + 1.0));
  return fr;
}

constexpr double rescale_limit = 1e150;

struct Pass {
  int nodes = 0;
  double wm = 0.0;   // w at the match index
  double wm1 = 0.0;  // w at the match index + 1
};

inline void rescale(double& a, double& b, double& d) {
  const double big = std::max(std::fabs(a), std::fabs(b));
  if (!std::isfinite(big)) fail(ErrorCode::Overflow, "Numerov solution overflowed");
  if (big > rescale_limit) {
    a /= big;
    b /= big;
    d /= big;
  }
}

// One step w_{i+1} = (2 - c_i) w_i - w_{i-1}, carried as a running difference.
inline void numerov_step(double c, double& w0, double& w1, double& dw) {
  dw -= c * w1;
  w0 = w1;
  w1 += dw;
  rescale(w0, w1, dw);
}

inline Pass outward(const PotentialModel& model, const Mesh& mesh, const Coeffs& f,
                    double E, int match) {
  const int n = static_cast<int>(f.size());
  double w0 = 0.0;
  double w1 = 0.0;
  if (model.family() == Family::hyperbolic) {
    w1 = f[1];
  } else if (starts_at_origin(model)) {
    if (model.angular_label() == 0.0) {
      // even: w_{-1} = w_1
      w0 = f[0];
      w1 = (1.0 - 0.5 * f.c[0]) * w0;
    } else {
      w1 = f[1];
    }
  } else {
    const double x0 = mesh.x[0];
    const auto fr = frobenius(model.indicial_exponent(), x0,
                              [&](double y) { return y * y * model.q(y, E); });
    const double l0 = fr.log_u(x0) - 0.5 * std::log(mesh.jac[0]);
    const double l1 = fr.log_u(mesh.x[1]) - 0.5 * std::log(mesh.jac[1]);
    w0 = f[0];
    w1 = f[1] * std::exp(l1 - l0);
  }
  Pass p;
  int last_sign = w0 > 0.0 ? 1 : (w0 < 0.0 ? -1 : 0);
  if (w1 != 0.0) {
    const int sg = w1 > 0.0 ? 1 : -1;
    if (last_sign != 0 && sg != last_sign) ++p.nodes;
    last_sign = sg;
  }
  if (match == 0) {
    p.wm = w0;
    p.wm1 = w1;
  }
  double dw = w1 - w0;
  for (int i = 1; i + 1 < n; ++i) {
    numerov_step(f.c[i], w0, w1, dw);
    if (w1 != 0.0) {
      const int sg = w1 > 0.0 ? 1 : -1;
      if (last_sign != 0 && sg != last_sign) ++p.nodes;
      last_sign = sg;
    }
    if (i == match) {
      p.wm = w0;
      p.wm1 = w1;
    }
  }
  return p;
}

inline Pass inward(const PotentialModel& model, const Mesh& mesh, const Coeffs& f,
                   double E, int match) {
  const int n = static_cast<int>(f.size());
  double w0 = 0.0;  // at index i + 1
  double w1 = 0.0;  // at index i
  if (model.family() == Family::trigonometric) {
    // mirror image of the left start, in the distance y to the right end
    const double L = model.domain().hi;
    const double y0 = mesh.y[n - 1];
    const auto fr = frobenius(model.right_indicial_exponent(), y0,
                              [&](double y) { return y * y * model.q(L - y, E); });
    const double l0 = fr.log_u(y0) - 0.5 * std::log(mesh.jac[n - 1]);
    const double l1 = fr.log_u(mesh.y[n - 2]) - 0.5 * std::log(mesh.jac[n - 2]);
    w0 = f[n - 1];
    w1 = f[n - 2] * std::exp(l1 - l0);
  } else {
    w0 = 0.0;
    w1 = f[n - 2];
  }
  Pass p;
  if (match == n - 2) {
    p.wm = w1;
    p.wm1 = w0;
    return p;
  }
  double dw = w1 - w0;
  for (int i = n - 2; i > match; --i) numerov_step(f.c[i], w0, w1, dw);
  p.wm = w1;
  p.wm1 = w0;
  return p;
}

// Normalized discrete Casoratian of the outward and inward solutions. It is
// the same at every index and vanishes exactly at a discrete eigenvalue.
inline double casoratian(const Pass& out, const Pass& in) {
  const double k = out.wm * in.wm1 - out.wm1 * in.wm;
  const double no = std::hypot(out.wm, out.wm1);
  const double ni = std::hypot(in.wm, in.wm1);
  return k / (no * ni);
}

inline void require_in_range(const PotentialModel& model, double E) {
  if (!model.bound_range().contains(E)) {
    fail(ErrorCode::OutOfBoundRange, "E = " + fmt(E) + " outside the bound range");
  }
}

inline int match_index(const PotentialModel& model, const Mesh& mesh, double E) {
  const int n = static_cast<int>(mesh.x.size());
  int m = n / 2;
  try {
    const double x_turn = find_turning_points(model, E).hi;
    const auto it = std::lower_bound(mesh.x.begin(), mesh.x.end(), x_turn);
    m = static_cast<int>(it - mesh.x.begin());
  } catch (const Error&) {
  }
  return std::clamp(m, 2, n - 3);
}

}  // namespace detail

inline int count_nodes(const PotentialModel& model, double E, const RadialGrid& grid) {
  const PotentialModel m = model.with_langer(false);
  detail::require_in_range(m, E);
  const auto mesh = detail::build_mesh(grid);
  const auto f = detail::numerov_f(m, mesh, E);
  return detail::outward(m, mesh, f, E, -1).nodes;
}

// Default grid for levels near energy E_ref. Radial kinds run from 1e-6 to
// min(40 r_out, the point where int sqrt(-q) past r_out reaches 40); the sech^2
// well is symmetric, out to where that tail integral reaches 40 but at least
// 25/alpha (weakly bound levels decay slowly).
inline RadialGrid default_grid(const PotentialModel& model, double E_ref,
                               int points = default_grid_points) {
  const PotentialModel m = model.with_langer(false);
  switch (m.family()) {
    case Family::trigonometric: {
      const double L = m.domain().hi;
      const double x_min = L / (1.0 + 1e6);
      return make_grid(m, x_min, L - x_min, points);
    }
    case Family::hyperbolic:
    case Family::radial:
      break;
  }
  auto tail = [&](double from, double cap) {
    double x = from;
    double action = 0.0;
    const double ratio = 1.001;
    while (action < 40.0 && x < cap) {
      const double next = x * ratio;
      const double mid = 0.5 * (x + next);
      action += std::sqrt(std::max(0.0, -m.q(mid, E_ref))) * (next - x);
      x = next;
    }
    return std::min(x, cap);
  };
  if (m.family() == Family::hyperbolic) {
    const double width = 1.0 / m.param("alpha");
    const double L = std::max(25.0 * width, tail(find_turning_points(m, E_ref).hi, 1e5 * width));
    return make_grid(m, -L, L, points);
  }
  const double r_out = find_turning_points(m, E_ref).hi;
  const double x_max = std::max(tail(r_out, 40.0 * r_out), 1.5 * r_out);
  return make_grid(m, starts_at_origin(m) ? 0.0 : 1e-6, x_max, points);
}

namespace detail {

// Node count for energy probing before a grid is fixed: each energy gets the
// default grid for itself. Energies without a classical region have no nodes.
inline int probe_nodes(const PotentialModel& m, double E, int points) {
  RadialGrid g;
  try {
    g = default_grid(m, E, points);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoClassicalRegion || e.code() == ErrorCode::DegenerateWell) {
      return 0;
    }
    throw;
  }
  return count_nodes(m, E, g);
}

// Finds ea < eb with nodes(ea) <= k < nodes(eb).
template <class Nodes>
std::pair<double, double> node_bracket(const PotentialModel& m, int k, const Nodes& nodes) {
  const Interval range = m.bound_range();
  double ea = 0.0;
  if (range.lo_finite()) {
    ea = range.lo + 1e-9 * std::max(1.0, std::fabs(range.lo));
    if (range.hi_finite()) ea = std::min(ea, 0.5 * (range.lo + range.hi));
  } else {
    ea = -1.0;
    while (nodes(ea) > k) {
      ea *= 2.0;
      if (ea < -1e300) fail(ErrorCode::BracketingFailed, "node count never drops to k");
    }
  }
  if (nodes(ea) > k) {
    fail(ErrorCode::BracketingFailed, "more than k nodes at the bottom of the bound range");
  }
  double eb = ea;
  for (int it = 0;; ++it) {
    if (range.hi_finite()) {
      eb = range.hi - 0.5 * (range.hi - ea);
      if (eb == ea || eb >= range.hi || it > 200) {
        fail(ErrorCode::NoSuchBoundState,
             "fewer than " + std::to_string(k + 1) + " nodes below E = " + fmt(range.hi));
      }
    } else {
      eb = ea + std::max(1.0, std::fabs(ea));
      if (!std::isfinite(eb)) fail(ErrorCode::BracketingFailed, "energy scan overflowed");
    }
    if (nodes(eb) > k) break;
    ea = eb;
  }
  return {ea, eb};
}

// Bracket of the k-th level to ~1e-3 relative from per-energy grids. Energies
// far from the level never meet a grid that is too coarse for them this way.
inline std::pair<double, double> probe_bracket(const PotentialModel& m, int k, int points) {
  auto nodes = [&](double E) { return probe_nodes(m, E, points); };
  auto [ea, eb] = node_bracket(m, k, nodes);
  for (int it = 0; it < 60; ++it) {
    if (eb - ea <= 1e-3 * std::max(std::fabs(ea), std::fabs(eb))) break;
    const double mid = 0.5 * (ea + eb);
    if (nodes(mid) > k) {
      eb = mid;
    } else {
      ea = mid;
    }
  }
  return {ea, eb};
}

inline ShootingResult solve_on_grid(const PotentialModel& m, int k, const RadialGrid& grid,
                                    double tol, double ea, double eb) {
  const auto mesh = build_mesh(grid);
  auto nodes = [&](double E) {
    const auto f = numerov_f(m, mesh, E);
    return outward(m, mesh, f, E, -1).nodes;
  };
  const Interval range = m.bound_range();

  // the hint came from other grids; widen it until this grid agrees
  int na = nodes(ea);
  int nb = nodes(eb);
  for (int it = 0; it < 60 && (na > k || nb <= k); ++it) {
    const double w = (eb - ea) * std::ldexp(1.0, it);
    if (na > k) {
      ea = std::max(ea - w, range.lo_finite() ? 0.5 * (ea + range.lo) : ea - w);
      na = nodes(ea);
    }
    if (nb <= k) {
      eb = std::min(eb + w, range.hi_finite() ? 0.5 * (eb + range.hi) : eb + w);
      nb = nodes(eb);
    }
  }
  if (na > k || nb <= k) {
    fail(ErrorCode::BracketingFailed, "node counts on this grid do not bracket level " +
                                          std::to_string(k));
  }
  // narrow until the bracket holds exactly the k-th eigenvalue
  for (int it = 0; it < 200 && !(na == k && nb == k + 1); ++it) {
    const double mid = 0.5 * (ea + eb);
    if (mid == ea || mid == eb) break;
    const int nm = nodes(mid);
    if (nm < na || nm > nb) fail(ErrorCode::GridTooCoarse, "node count is not monotone in E");
    if (nm > k) {
      eb = mid;
      nb = nm;
    } else {
      ea = mid;
      na = nm;
    }
  }
  if (!(na == k && nb == k + 1)) {
    fail(ErrorCode::GridTooCoarse, "node count jumps past k = " + std::to_string(k));
  }

  const int match = match_index(m, mesh, 0.5 * (ea + eb));
  auto mismatch = [&](double E) {
    const auto f = numerov_f(m, mesh, E);
    return casoratian(outward(m, mesh, f, E, match), inward(m, mesh, f, E, match));
  };
  const double fa = mismatch(ea);
  const double fb = mismatch(eb);
  if (fa * fb > 0.0) {
    fail(ErrorCode::GridTooCoarse, "matching function does not change sign in the node bracket");
  }
  std::uintmax_t max_iter = 200;
  auto stop = [tol](double a, double b) {
    return std::fabs(b - a) <= tol * std::max({std::fabs(a), std::fabs(b), 1e-300});
  };
  auto [lo, hi] = boost::math::tools::toms748_solve(mismatch, ea, eb, fa, fb, stop, max_iter);
  if (!stop(lo, hi)) {
    fail(ErrorCode::ToleranceNotMet,
         "matching did not converge: bracket [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  ShootingResult r;
  r.energy = 0.5 * (lo + hi);
  r.nodes = k;
  r.match_residual = std::fabs(mismatch(r.energy));
  r.grid = grid;
  return r;
}

inline int solution_index(const PotentialModel& m, int n_r) {
  if (n_r < 0) fail(ErrorCode::InvalidParameter, "n_r >= 0 required");
  const int k = n_r - m.index_offset();
  if (k < 0) {
    fail(ErrorCode::NoSuchBoundState,
         "this form of the equation has no solution with n_r = " + std::to_string(n_r));
  }
  return k;
}

}  // namespace detail

inline ShootingResult solve_eigenvalue(const PotentialModel& model, int n_r,
                                       const RadialGrid& grid,
                                       double tol = default_numerov_tol) {
  const PotentialModel m = model.with_langer(false);
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tol > 0 required");
  const int k = detail::solution_index(m, n_r);
  const auto [ea, eb] = detail::probe_bracket(m, k, default_grid_points);
  return detail::solve_on_grid(m, k, grid, tol, ea, eb);
}

// Picks the grid itself, frozen at the upper end of the probe bracket.
inline ShootingResult solve_eigenvalue(const PotentialModel& model, int n_r,
                                       double tol = default_numerov_tol,
                                       int points = default_grid_points) {
  const PotentialModel m = model.with_langer(false);
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tol > 0 required");
  const int k = detail::solution_index(m, n_r);
  const auto [ea, eb] = detail::probe_bracket(m, k, points);
  return detail::solve_on_grid(m, k, default_grid(m, eb, points), tol, ea, eb);
}

inline std::vector<EnergyLevel> oracle_spectrum(const PotentialModel& model, int count,
                                                double tol = default_numerov_tol,
                                                int points = default_grid_points) {
  if (count < 1) fail(ErrorCode::InvalidParameter, "count >= 1 required");
  std::vector<EnergyLevel> out;
  const int first = model.index_offset();
  for (int n = first; n < first + count; ++n) {
    try {
      const auto r = solve_eigenvalue(model, n, tol, points);
      if (!out.empty() && !(r.energy > out.back().value)) {
        fail(ErrorCode::GridTooCoarse, "levels are not strictly increasing");
      }
      out.push_back({r.energy, Method::numerov, state_of(model, n)});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoSuchBoundState) break;
      throw;
    }
  }
  return out;
}

inline std::vector<EnergyLevel> oracle_spectrum(const PotentialModel& model, int count,
                                                const RadialGrid& grid,
                                                double tol = default_numerov_tol) {
  if (count < 1) fail(ErrorCode::InvalidParameter, "count >= 1 required");
  std::vector<EnergyLevel> out;
  const int first = model.index_offset();
  for (int n = first; n < first + count; ++n) {
    try {
      const auto r = solve_eigenvalue(model, n, grid, tol);
      if (!out.empty() && !(r.energy > out.back().value)) {
        fail(ErrorCode::GridTooCoarse, "levels are not strictly increasing");
      }
      out.push_back({r.energy, Method::numerov, state_of(model, n)});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoSuchBoundState) break;
      throw;
    }
  }
  return out;
}

// Empirical order p = log2(|E1 - E2| / |E2 - E3|) over grids whose step halves.
inline double convergence_order(const PotentialModel& model, int n_r,
                                const std::vector<RadialGrid>& grids) {
  if (grids.size() < 3) fail(ErrorCode::InsufficientGrids, "at least three grids required");
  for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
    const auto& a = grids[i];
    const auto& b = grids[i + 1];
    const bool same_span = a.map == b.map && a.z_min == b.z_min && a.z_max == b.z_max;
    const double ratio = a.h / b.h;
    if (!same_span || std::fabs(ratio - 2.0) > 1e-9) {
      fail(ErrorCode::InsufficientGrids, "grids must share their span and halve h in turn");
    }
  }
  std::vector<double> e;
  for (std::size_t i = 0; i < 3; ++i) {
    e.push_back(solve_eigenvalue(model, n_r, grids[grids.size() - 3 + i]).energy);
  }
  const double d1 = std::fabs(e[0] - e[1]);
  const double d2 = std::fabs(e[1] - e[2]);
  if (!(d1 > 0.0 && d2 > 0.0)) {
    fail(ErrorCode::InsufficientGrids, "eigenvalues identical across grids");
  }
  return std::log2(d1 / d2);
}

}  // namespace sommerfeld
