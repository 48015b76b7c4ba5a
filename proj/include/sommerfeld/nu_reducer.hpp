#pragma once

// Nikiforov-Uvarov reduction of
//   u'' + (tau~/sigma) u' + (sigma~/sigma^2) u = 0,
// deg sigma, deg sigma~ <= 2, deg tau~ <= 1. The linear polynomial
//   pi = (sigma' - tau~)/2 +- sqrt(((sigma' - tau~)/2)^2 - sigma~ + k sigma)
// exists when the quadratic under the root is a perfect square; then
// lambda = k + pi' and the levels follow from lambda + n tau' + n(n-1) sigma''/2 = 0.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sommerfeld/error.hpp"
#include "sommerfeld/potential_catalog.hpp"

namespace sommerfeld {

// c0 + c1 x + c2 x^2
struct Poly2 {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
  double derivative(double x) const { return c1 + 2.0 * c2 * x; }
  int degree() const { return c2 != 0.0 ? 2 : (c1 != 0.0 ? 1 : (c0 != 0.0 ? 0 : -1)); }
  double scale() const { return std::max({std::fabs(c0), std::fabs(c1), std::fabs(c2)}); }

  friend Poly2 operator+(Poly2 a, Poly2 b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
  friend Poly2 operator*(double s, Poly2 a) { return {s * a.c0, s * a.c1, s * a.c2}; }
};

struct HypergeometricCoefficients {
  Poly2 sigma;
  Poly2 tau_tilde;
  Poly2 sigma_tilde;
};

struct Branch {
  int k_index = 0;     // 0: smaller root of the discriminant equation, 1: larger
  int radical_sign = 1;
};

struct Reduction {
  double k = 0.0;
  Poly2 pi_poly;
  Poly2 tau_poly;
  double lambda = 0.0;
  Branch branch;
  double discriminant = 0.0;  // of the quadratic under the root, after fixing k
};

struct SommerfeldCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

inline std::vector<Reduction> reduce_hypergeometric(const HypergeometricCoefficients& h) {
  if (h.sigma.degree() < 0) fail(ErrorCode::DegenerateSigma, "sigma is identically zero");
  if (h.tau_tilde.c2 != 0.0) fail(ErrorCode::InvalidParameter, "deg tau~ <= 1 required");

  const Poly2 half{0.5 * (h.sigma.c1 - h.tau_tilde.c0), 0.5 * (2.0 * h.sigma.c2 - h.tau_tilde.c1),
                   0.0};
  // R(x; k) = half^2 - sigma~ + k sigma = p + k s
  const Poly2 p{half.c0 * half.c0 - h.sigma_tilde.c0,
                2.0 * half.c0 * half.c1 - h.sigma_tilde.c1,
                half.c1 * half.c1 - h.sigma_tilde.c2};
  const Poly2& s = h.sigma;

  // disc R = r1^2 - 4 r2 r0 is quadratic in k.
  const double qa = s.c1 * s.c1 - 4.0 * s.c2 * s.c0;
  const double qb = 2.0 * p.c1 * s.c1 - 4.0 * (p.c2 * s.c0 + s.c2 * p.c0);
  const double qc = p.c1 * p.c1 - 4.0 * p.c2 * p.c0;
  const double q_scale = std::max({std::fabs(qa), std::fabs(qb), std::fabs(qc), 1e-300});

  std::vector<double> ks;
  if (std::fabs(qa) <= 1e-14 * q_scale) {
    if (std::fabs(qb) <= 1e-14 * q_scale) {
      fail(ErrorCode::DegenerateSigma, "the perfect-square condition does not involve k");
    }
    ks.push_back(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * std::max(qb * qb, std::fabs(4.0 * qa * qc))) {
      fail(ErrorCode::NoRealK, "k-discriminant " + detail::fmt(disc) + " < 0");
    }
    disc = std::max(0.0, disc);
    const double t = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    double k1 = t / qa;
    double k2 = t != 0.0 ? qc / t : k1;
    if (k1 > k2) std::swap(k1, k2);
    ks.push_back(k1);
    if (k2 != k1) ks.push_back(k2);
  }

  std::vector<Reduction> out;
  for (std::size_t ik = 0; ik < ks.size(); ++ik) {
    const double k = ks[ik];
    const Poly2 r = p + k * s;
    const double r_scale = std::max(r.scale(), 1e-300);
    double u = 0.0;
    double v = 0.0;
    if (r.c2 > 1e-14 * r_scale) {
      u = std::sqrt(r.c2);
      v = r.c1 / (2.0 * u);
    } else if (std::fabs(r.c2) <= 1e-14 * r_scale && std::fabs(r.c1) <= 1e-12 * r_scale &&
               r.c0 >= -1e-14 * r_scale) {
      v = std::sqrt(std::max(0.0, r.c0));
    } else {
      continue;  // R is a negative square: pi would not be real
    }
    for (int sign : {+1, -1}) {
      if (sign < 0 && u == 0.0 && v == 0.0) break;
      Reduction red;
      red.k = k;
      red.pi_poly = {half.c0 + sign * v, half.c1 + sign * u, 0.0};
      red.tau_poly = h.tau_tilde + 2.0 * red.pi_poly;
      red.lambda = k + red.pi_poly.c1;
      red.branch = {static_cast<int>(ik), sign};
      red.discriminant = r.c1 * r.c1 - 4.0 * r.c2 * r.c0;
      out.push_back(red);
    }
  }
  if (out.empty()) fail(ErrorCode::NoRealK, "no k gives a real linear pi(x)");
  return out;
}

namespace detail {

// Smallest real zero of sigma, or NaN.
inline double sigma_zero(const Poly2& sigma) {
  if (sigma.c2 != 0.0) {
    const double disc = sigma.c1 * sigma.c1 - 4.0 * sigma.c2 * sigma.c0;
    if (disc < 0.0) return std::nan("");
    const double r = std::sqrt(disc);
    return std::min((-sigma.c1 - r) / (2.0 * sigma.c2), (-sigma.c1 + r) / (2.0 * sigma.c2));
  }
  if (sigma.c1 != 0.0) return -sigma.c0 / sigma.c1;
  return std::nan("");
}

}  // namespace detail

// Bound states need tau' < 0. When several reductions qualify, the one whose
// pi at the zero of sigma carries the nonnegative radical (the regular
// indicial branch) is kept.
inline Reduction select_bound_state_branch(const std::vector<Reduction>& reductions,
                                           const Poly2& sigma = {0.0, 1.0, 0.0},
                                           const Poly2& tau_tilde = {}) {
  if (reductions.empty()) fail(ErrorCode::NoBoundBranch, "no reductions given");
  std::vector<Reduction> negative;
  for (const auto& r : reductions) {
    if (r.tau_poly.c1 < 0.0) negative.push_back(r);
  }
  if (negative.empty()) fail(ErrorCode::NoBoundBranch, "no reduction has tau' < 0");
  if (negative.size() == 1) return negative.front();

  const double x0 = detail::sigma_zero(sigma);
  if (std::isnan(x0)) fail(ErrorCode::AmbiguousBranch, "several tau' < 0 branches");
  const double half = 0.5 * (sigma.derivative(x0) - tau_tilde(x0));
  std::vector<Reduction> regular;
  for (const auto& r : negative) {
    const double radical = r.pi_poly(x0) - half;
    if (radical >= -1e-12 * std::max(1.0, std::fabs(half))) regular.push_back(r);
  }
  if (regular.empty()) fail(ErrorCode::NoBoundBranch, "no regular tau' < 0 branch");
  // c = 0 leaves two copies of one reduction
  auto same = [](const Reduction& a, const Reduction& b) {
    const double tol = 1e-12 * std::max({1.0, std::fabs(a.k), a.pi_poly.scale()});
    return std::fabs(a.k - b.k) <= tol && std::fabs(a.pi_poly.c0 - b.pi_poly.c0) <= tol &&
           std::fabs(a.pi_poly.c1 - b.pi_poly.c1) <= tol;
  };
  for (std::size_t i = 1; i < regular.size(); ++i) {
    if (!same(regular[i], regular[0])) {
      fail(ErrorCode::AmbiguousBranch, "several regular tau' < 0 branches");
    }
  }
  return regular.front();
}

inline double nu_eigenvalue_residual(const Reduction& r, const Poly2& sigma, int n) {
  return r.lambda + n * r.tau_poly.c1 + 0.5 * n * (n - 1.0) * (2.0 * sigma.c2);
}

inline double sommerfeld_quantization(const SommerfeldCoefficients& sc, int n) {
  if (!(sc.a > 0.0)) fail(ErrorCode::InvalidParameter, "a > 0 required");
  if (!(sc.c >= 0.0)) fail(ErrorCode::InvalidParameter, "c >= 0 required");
  return sc.b / (2.0 * std::sqrt(sc.a)) - std::sqrt(sc.c) - (n + 0.5);
}

// sigma = x, tau~ = 0, sigma~ = -a x^2 + b x - c + shift
inline HypergeometricCoefficients sommerfeld_form(const SommerfeldCoefficients& sc,
                                                  double tau0 = 0.0, double shift = 0.25) {
  return {{0.0, 1.0, 0.0}, {tau0, 0.0, 0.0}, {shift - sc.c, sc.b, -sc.a}};
}

struct HypergeometricForm {
  HypergeometricCoefficients coeffs;
  double shift = 0.25;  // sigma~ = -a x^2 + b x - c + shift
  std::string variable;
};

// NU form of the true (unmodified) equation at energy E, read off pointwise
// from q_true: sigma~(x) = x^2 q(x) for radial kinds, and in xi = x^2 for the
// oscillator sigma~(xi) = xi q(sqrt xi)/4 with tau~ = 1/2.
inline HypergeometricForm hypergeometric_form(const PotentialModel& model, double E) {
  if (model.family() != Family::radial) {
    fail(ErrorCode::NotSommerfeldType,
         std::string(kind_name(model.kind())) + " is not of the radial Sommerfeld type");
  }
  const bool osc = model.kind() == PotentialKind::oscillator_nd;
  auto sigma_tilde = [&](double x) {
    if (osc) return x * model.q_true(std::sqrt(x), E) / 4.0;
    return x * x * model.q_true(x, E);
  };
  // Quadratic through three samples (Newton divided differences).
  const double x0 = 1.0, x1 = 2.0, x2 = 3.0;
  const double f0 = sigma_tilde(x0), f1 = sigma_tilde(x1), f2 = sigma_tilde(x2);
  const double d01 = (f1 - f0) / (x1 - x0);
  const double d12 = (f2 - f1) / (x2 - x1);
  const double c2 = (d12 - d01) / (x2 - x0);
  const double c1 = d01 - c2 * (x0 + x1);
  const double c0 = f0 - x0 * (c1 + c2 * x0);

  HypergeometricForm form;
  form.coeffs.sigma = {0.0, 1.0, 0.0};
  form.coeffs.tau_tilde = {osc ? 0.5 : 0.0, 0.0, 0.0};
  form.coeffs.sigma_tilde = {c0, c1, c2};
  form.shift = osc ? 1.0 / 16.0 : 0.25;
  form.variable = osc ? "xi = x^2" : "x";
  return form;
}

inline SommerfeldCoefficients sommerfeld_coefficients(const HypergeometricForm& form) {
  const Poly2& st = form.coeffs.sigma_tilde;
  double c = form.shift - st.c0;
  // c = 0 (e.g. dim 2, l = 0) comes back from the fit as +-1e-17
  if (c < 0.0 && c > -1e-12 * std::max(1.0, st.scale())) c = 0.0;
  return {-st.c2, st.c1, c};
}

struct PuzzleReport {
  bool holds = false;
  double max_da = 0.0;
  double max_db = 0.0;
  double max_dc = 0.0;
  int samples = 0;

  double max_deviation() const { return std::max({max_da, max_db, max_dc}); }
};

inline PuzzleReport verify_puzzle(const PotentialModel& model, const std::vector<double>& energies,
                                  double threshold = 1e-12) {
  if (model.family() != Family::radial) {
    fail(ErrorCode::NotSommerfeldType,
         std::string(kind_name(model.kind())) + " is not of the radial Sommerfeld type");
  }
  const PotentialModel langer = model.with_langer(true);
  PuzzleReport rep;
  for (double E : energies) {
    const PhaseTriple t = abc_coefficients(langer, E);
    const SommerfeldCoefficients sc = sommerfeld_coefficients(hypergeometric_form(model, E));
    rep.max_da = std::max(rep.max_da, std::fabs(sc.a - t.A));
    rep.max_db = std::max(rep.max_db, std::fabs(sc.b - t.B));
    rep.max_dc = std::max(rep.max_dc, std::fabs(sc.c - t.C));
    ++rep.samples;
  }
  rep.holds = rep.samples > 0 && rep.max_deviation() <= threshold;
  return rep;
}

}  // namespace sommerfeld
