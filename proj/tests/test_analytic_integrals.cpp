#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "oracles.hpp"
#include "sommerfeld/analytic_integrals.hpp"
#include "sommerfeld/quadrature.hpp"

using namespace sommerfeld;
using std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidParameter;
}

bool rel_close(double got, double want, double tol) {
  return std::fabs(got - want) <= tol * std::max(std::fabs(want), 1e-300);
}

// The library's own quadrature on its own turning points; the derivative
// identities are checked against this route.
double radial_quad(double A, double B, double C) {
  const auto tp = quadratic_turning_points(A, B, C);
  auto p2 = [&](double r) { return -A + B / r - C / (r * r); };
  return quadrature::turning_point_integral(p2, tp.lo, tp.hi, 1e-14).value;
}

double trig_quad(double A, double B, double C) {
  const auto tp = quadratic_turning_points(A, B, C, Family::trigonometric);
  auto p2 = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return A - B / (c * c) - C / (s * s);
  };
  return quadrature::turning_point_integral(p2, tp.lo, tp.hi, 1e-14).value;
}

double hyper_quad(double eps) {
  const double x0 = hyperbolic_turning_point(eps);
  auto p2 = [&](double x) {
    const double s = 1.0 / std::cosh(x);
    return s * s - eps;
  };
  return quadrature::turning_point_integral(p2, -x0, x0, 1e-14).value;
}

}  // namespace

TEST(Integrals, SommerfeldExamples) {
  EXPECT_EQ(sommerfeld_integral(1, 2, 1), 0.0);
  EXPECT_NEAR(sommerfeld_integral(1, 4, 1), pi, 1e-15);
  EXPECT_NEAR(sommerfeld_integral(2, 6, 2), pi / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(oracle::radial_action(1, 4, 1), pi, 1e-13);
  EXPECT_NEAR(oracle::radial_action(2, 6, 2), pi / std::sqrt(2.0), 1e-13);
}

TEST(Integrals, TrigExamples) {
  EXPECT_EQ(trig_integral(9, 1, 4), 0.0);
  EXPECT_NEAR(trig_integral(16, 1, 4), pi / 2, 1e-15);
  EXPECT_NEAR(trig_integral(9, 1, 1), pi / 2, 1e-15);
  EXPECT_NEAR(oracle::trig_action(16, 1, 4), pi / 2, 1e-13);
  EXPECT_NEAR(oracle::trig_action(9, 1, 1), pi / 2, 1e-13);
}

TEST(Integrals, HyperbolicExamples) {
  EXPECT_EQ(hyperbolic_integral(1.0), 0.0);
  EXPECT_NEAR(hyperbolic_integral(0.25), pi / 2, 1e-15);
  EXPECT_NEAR(hyperbolic_integral(0.64), 0.2 * pi, 1e-15);
  EXPECT_NEAR(oracle::hyperbolic_action(0.25), pi / 2, 1e-13);
  EXPECT_NEAR(oracle::hyperbolic_action(0.64), 0.2 * pi, 1e-13);
}

TEST(Integrals, Errors) {
  EXPECT_EQ(code_of([] { sommerfeld_integral(1, 1.9, 1); }), ErrorCode::NoClassicalRegion);
  EXPECT_EQ(code_of([] { trig_integral(8.9, 1, 4); }), ErrorCode::NoClassicalRegion);
  EXPECT_EQ(code_of([] { hyperbolic_integral(0.0); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { hyperbolic_integral(1.01); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { sommerfeld_integral(0, 1, 1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { quadratic_turning_points(1, 1, 1); }), ErrorCode::NoClassicalRegion);
}

TEST(Integrals, TurningPoints) {
  const auto r = quadratic_turning_points(1, 4, 1);
  EXPECT_NEAR(r.lo, 2 - std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.hi, 2 + std::sqrt(3.0), 1e-15);
  const auto d = quadratic_turning_points(1, 2, 1);
  EXPECT_EQ(d.lo, 1.0);
  EXPECT_EQ(d.hi, 1.0);

  const auto t = trig_cos2_roots(16, 1, 4);
  EXPECT_NEAR(t.lo, (-3 - std::sqrt(105.0)) / 16, 1e-15);
  EXPECT_NEAR(t.hi, (-3 + std::sqrt(105.0)) / 16, 1e-15);
  const auto th = quadratic_turning_points(16, 1, 4, Family::trigonometric);
  EXPECT_LT(th.lo, th.hi);
  auto p2 = [](double x) {
    const double c = std::cos(x), s = std::sin(x);
    return 16 - 1 / (c * c) - 4 / (s * s);
  };
  EXPECT_NEAR(p2(th.lo), 0.0, 1e-12);
  EXPECT_NEAR(p2(th.hi), 0.0, 1e-12);
  EXPECT_GT(p2(0.5 * (th.lo + th.hi)), 0.0);

  EXPECT_NEAR(1.0 / std::cosh(hyperbolic_turning_point(0.25)), 0.5, 1e-15);
}

TEST(Integrals, ClosedFormsMatchQuadratureOracle) {
  oracle::Sampler rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto r = rng.radial();
    EXPECT_PRED3(rel_close, oracle::radial_action(r.A, r.B, r.C), sommerfeld_integral(r.A, r.B, r.C),
                 1e-9)
        << r.A << " " << r.B << " " << r.C;
    const auto t = rng.trig();
    EXPECT_PRED3(rel_close, oracle::trig_action(t.A, t.B, t.C), trig_integral(t.A, t.B, t.C), 1e-9)
        << t.A << " " << t.B << " " << t.C;
    const double eps = rng.uniform(1e-3, 0.999);
    EXPECT_PRED3(rel_close, oracle::hyperbolic_action(eps), hyperbolic_integral(eps), 1e-9) << eps;
  }
}

TEST(Integrals, LibraryQuadratureMatchesClosedForms) {
  oracle::Sampler rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto r = rng.radial();
    EXPECT_PRED3(rel_close, radial_quad(r.A, r.B, r.C), sommerfeld_integral(r.A, r.B, r.C), 1e-9);
    const auto t = rng.trig();
    EXPECT_PRED3(rel_close, trig_quad(t.A, t.B, t.C), trig_integral(t.A, t.B, t.C), 1e-9);
    const double eps = rng.uniform(1e-3, 0.999);
    EXPECT_PRED3(rel_close, hyper_quad(eps), hyperbolic_integral(eps), 1e-9);
  }
}

TEST(Integrals, AnalyticDerivatives) {
  EXPECT_DOUBLE_EQ(sommerfeld_integral_dB(4.0), pi / 4);
  EXPECT_DOUBLE_EQ(trig_integral_dA(4.0), pi / 8);
  EXPECT_DOUBLE_EQ(hyperbolic_integral_deps(0.25), -pi);
}

// Central differences of the quadrature against the appendix derivatives.
TEST(Integrals, FiniteDifferenceDerivatives) {
  const double h = 1e-4;
  for (int i = 0; i < 10; ++i) {
    const double A = 0.5 + 0.4 * i, C = 1.0 + 0.2 * i;
    const double B = 2.0 * std::sqrt(A * C) + 1.0 + 0.3 * i;
    const double fd = (radial_quad(A, B + h, C) - radial_quad(A, B - h, C)) / (2 * h);
    EXPECT_NEAR(fd, sommerfeld_integral_dB(A), 1e-6);
    const double fd_or = (oracle::radial_action(A, B + h, C) - oracle::radial_action(A, B - h, C)) /
                         (2 * h);
    EXPECT_NEAR(fd_or, sommerfeld_integral_dB(A), 1e-6);
  }
  for (int i = 0; i < 10; ++i) {
    const double B = 0.5 + 0.3 * i, C = 1.0 + 0.1 * i;
    const double s = (std::sqrt(B) + std::sqrt(C)) * (1.2 + 0.1 * i);
    const double A = s * s;
    const double fd = (trig_quad(A + h, B, C) - trig_quad(A - h, B, C)) / (2 * h);
    EXPECT_NEAR(fd, trig_integral_dA(A), 1e-6);
  }
  for (int i = 0; i < 10; ++i) {
    const double eps = 0.05 + 0.09 * i;
    const double hh = 1e-5;
    const double fd = (hyper_quad(eps + hh) - hyper_quad(eps - hh)) / (2 * hh);
    EXPECT_NEAR(fd, hyperbolic_integral_deps(eps), 1e-6);
  }
}

TEST(Integrals, TrigPiecesAddUp) {
  oracle::Sampler rng(13);
  for (int i = 0; i < 500; ++i) {
    const auto t = rng.trig();
    const auto [left, right] = trig_integral_pieces(t.A, t.B, t.C);
    const double whole = trig_integral(t.A, t.B, t.C);
    EXPECT_NEAR(left + right, whole, 1e-12 * std::max(1.0, whole));
  }
}

// The two-piece form with the pi/(2 sqrt 2) prefactor sums to
// pi sqrt(A)/(2 sqrt 2) - (pi/2)(sqrt B + sqrt C), which is not the integral.
TEST(Integrals, PrintedPiecesDoNotAddUp) {
  const double A = 16, B = 1, C = 4;
  const double printed = pi * std::sqrt(A) / (2 * std::sqrt(2.0)) - 0.5 * pi * (1 + 2);
  EXPECT_GT(std::fabs(printed - trig_integral(A, B, C)), 0.1);
}

TEST(Integrals, SquareRootScaling) {
  oracle::Sampler rng(14);
  for (int i = 0; i < 500; ++i) {
    const auto r = rng.radial();
    const double lam = rng.log_uniform(1e-3, 1e3);
    const double base = sommerfeld_integral(r.A, r.B, r.C);
    EXPECT_NEAR(sommerfeld_integral(lam * r.A, lam * r.B, lam * r.C), std::sqrt(lam) * base,
                1e-12 * std::max(1.0, std::sqrt(lam) * base));
  }
}

TEST(Integrals, Anchors) {
  oracle::Sampler rng(15);
  for (int i = 0; i < 100; ++i) {
    // exact squares so the threshold is representable
    const double a = rng.integer(1, 30), c = rng.integer(1, 30);
    EXPECT_EQ(sommerfeld_integral(a * a, 2 * a * c, c * c), 0.0);
    EXPECT_EQ(trig_integral((a + c) * (a + c), a * a, c * c), 0.0);
  }
}
