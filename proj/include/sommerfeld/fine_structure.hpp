#pragma once

// Small-coupling structure of the relativistic Coulomb levels
//   E/mc^2 = 1/sqrt(1 + mu^2/D^2),
//   D = n_r + 1/2 + sqrt((l+1/2)^2 - mu^2)   (Klein-Gordon)
//   D = n_r + sqrt((j+1/2)^2 - mu^2)         (Dirac)
// and the spread of the levels sharing one principal number.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "sommerfeld/error.hpp"
#include "sommerfeld/potential_catalog.hpp"

namespace sommerfeld {

enum class Theory { kg, dirac };

constexpr std::string_view theory_name(Theory t) { return t == Theory::kg ? "kg" : "dirac"; }

inline double relativistic_denominator(Theory theory, int n_r, double angular, double mu) {
  if (n_r < 0) fail(ErrorCode::InvalidParameter, "n_r >= 0 required");
  if (!(mu > 0.0)) fail(ErrorCode::InvalidParameter, "mu > 0 required");
  if (theory == Theory::kg) {
    if (!detail::is_nonneg_integer(angular)) {
      fail(ErrorCode::InvalidParameter, "l must be a nonnegative integer");
    }
  } else if (!detail::is_half_odd(angular)) {
    fail(ErrorCode::InvalidParameter, "j must be one of 1/2, 3/2, ...");
  }
  const double top = angular + 0.5;
  if (mu >= top) {
    fail(ErrorCode::SupercriticalCoupling,
         "mu = " + detail::fmt(mu) + " >= " + detail::fmt(top));
  }
  const double root = std::sqrt(top * top - mu * mu);
  return theory == Theory::kg ? n_r + 0.5 + root : n_r + root;
}

// 1 - E/mc^2 without the cancellation: t/(sqrt(1+t)(1+sqrt(1+t))), t = mu^2/D^2.
inline double binding(Theory theory, int n_r, double angular, double mu) {
  const double d = relativistic_denominator(theory, n_r, angular, mu);
  const double t = (mu / d) * (mu / d);
  const double r = std::sqrt(1.0 + t);
  return t / (r * (1.0 + r));
}

inline double relativistic_level(Theory theory, int n_r, double angular, double mu) {
  const double d = relativistic_denominator(theory, n_r, angular, mu);
  return 1.0 / std::sqrt(1.0 + (mu / d) * (mu / d));
}

inline double principal_number(Theory theory, int n_r, double angular) {
  return theory == Theory::kg ? n_r + angular + 1.0 : n_r + angular + 0.5;
}

struct RichardsonResult {
  double value = 0.0;
  std::vector<double> residuals;  // |diag_k - diag_{k-1}|
};

// values[k] sampled at mu_k = mu_0 / 2^k with an error series in mu^2.
inline RichardsonResult richardson(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 3) fail(ErrorCode::FitUnstable, "ladder too short");
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    t[k][0] = values[k];
    double f = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
      f *= 4.0;
      t[k][j] = (f * t[k][j - 1] - t[k - 1][j - 1]) / (f - 1.0);
    }
  }
  RichardsonResult r;
  std::size_t best = 1;
  for (std::size_t k = 1; k < n; ++k) {
    r.residuals.push_back(std::fabs(t[k][k] - t[k - 1][k - 1]));
    if (r.residuals.back() < r.residuals[best - 1]) best = k;
  }
  bool decreased = false;
  for (std::size_t k = 1; k < r.residuals.size(); ++k) {
    decreased = decreased || r.residuals[k] < r.residuals[k - 1];
  }
  if (!decreased && r.residuals.front() > 0.0) {
    fail(ErrorCode::FitUnstable, "Richardson residuals never decrease");
  }
  r.value = t[best][best];
  return r;
}

struct ExpansionCoefficients {
  double c0 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
};

inline constexpr double ladder_top = 1e-2;
inline constexpr int ladder_size = 6;

inline ExpansionCoefficients expansion_coefficients(Theory theory, int n_r, double angular) {
  std::vector<double> mus;
  for (int k = 0; k < ladder_size; ++k) mus.push_back(ladder_top / std::pow(2.0, k));

  std::vector<double> e0, g2;
  for (double mu : mus) {
    e0.push_back(relativistic_level(theory, n_r, angular, mu));
    g2.push_back(-binding(theory, n_r, angular, mu) / (mu * mu));
  }
  ExpansionCoefficients c;
  c.c0 = richardson(e0).value;
  c.c2 = richardson(g2).value;
  std::vector<double> g4;
  for (std::size_t k = 0; k < mus.size(); ++k) {
    g4.push_back((g2[k] - c.c2) / (mus[k] * mus[k]));
  }
  c.c4 = richardson(g4).value;
  return c;
}

// E(highest angular member) - E(lowest) at fixed principal number n.
inline double level_spread(Theory theory, int n, double mu) {
  if (n < 2) fail(ErrorCode::InvalidParameter, "n >= 2 required (n = 1 has a single member)");
  if (theory == Theory::kg) {
    return binding(theory, n - 1, 0.0, mu) - binding(theory, 0, n - 1.0, mu);
  }
  return binding(theory, n - 1, 0.5, mu) - binding(theory, 0, n - 0.5, mu);
}

inline double spread_ratio(int n, double mu) {
  return level_spread(Theory::kg, n, mu) / level_spread(Theory::dirac, n, mu);
}

}  // namespace sommerfeld
