#pragma once

// Composite Gauss-Legendre for integrals of sqrt(p^2) between two turning
// points. The substitution x = x1 + (x2 - x1) sin^2(phi) turns both square-root
// endpoints into smooth zeros of the integrand.

#include <cmath>
#include <numbers>
#include <vector>

namespace sommerfeld::quadrature {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Newton iteration on P_n from the Chebyshev-like initial guess.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // one more derivative evaluation at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

inline const Rule& gl16() {
  static const Rule rule = gauss_legendre(16);
  return rule;
}

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int nodes = 0;
  bool converged = false;
};

template <class F>
double sin2_panels(const F& p2, double x1, double width, int panels) {
  const Rule& g = gl16();
  const double h = 0.5 * std::numbers::pi / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double phi = mid + 0.5 * h * g.nodes[i];
      const double s = std::sin(phi);
      const double x = x1 + width * s * s;
      const double v = p2(x);
      if (v > 0.0) sum += g.weights[i] * std::sqrt(v) * std::sin(2.0 * phi);
    }
    total += sum;
  }
  return total * 0.5 * h * width;
}

// int_{x1}^{x2} sqrt(max(0, p2(x))) dx, doubling the panel count until two
// successive values differ by at most tol.
template <class F>
Estimate turning_point_integral(const F& p2, double x1, double x2, double tol,
                                int max_panels = 1 << 14) {
  const double width = x2 - x1;
  Estimate est;
  int panels = 4;
  double prev = sin2_panels(p2, x1, width, panels);
  est.nodes = 16 * panels;
  while (panels < max_panels) {
    panels *= 2;
    const double cur = sin2_panels(p2, x1, width, panels);
    est.nodes += 16 * panels;
    est.value = cur;
    est.error = std::fabs(cur - prev);
    if (est.error <= tol) {
      est.converged = true;
      return est;
    }
    prev = cur;
  }
  return est;
}

}  // namespace sommerfeld::quadrature
