#pragma once

// Closed-form energy levels: the exact spectra of the unmodified equations and
// the levels implied by the closed WKB condition  b/(2 sqrt a) - sqrt c = n + 1/2
// (or its trigonometric / hyperbolic analogues).

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "sommerfeld/error.hpp"
#include "sommerfeld/potential_catalog.hpp"

namespace sommerfeld {

enum class Angular { orbital, total, none };

struct QuantumState {
  int n_r = 0;
  Angular kind = Angular::orbital;
  double angular = 0.0;  // l, or j for dirac; unused for the Poschl-Teller wells
  int dim = 3;
};

enum class Method { exact, wkb_closed, wkb_numeric, numerov };

constexpr std::string_view method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::wkb_closed: return "wkb_closed";
    case Method::wkb_numeric: return "wkb_numeric";
    case Method::numerov: return "numerov";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::exact, Method::wkb_closed, Method::wkb_numeric, Method::numerov}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

struct EnergyLevel {
  double value = 0.0;
  Method method = Method::exact;
  QuantumState state;
};

inline QuantumState state_of(const PotentialModel& model, int n_r) {
  QuantumState s;
  s.n_r = n_r;
  s.dim = model.dim();
  s.angular = model.angular_label();
  if (model.uses_total_j()) {
    s.kind = Angular::total;
  } else if (model.family() == Family::radial) {
    s.kind = Angular::orbital;
  } else {
    s.kind = Angular::none;
  }
  return s;
}

// Principal quantum number n = n_r + l + 1 (orbital labels in dim 3),
// n = n_r + j + 1/2 for dirac.
inline double principal_number(const QuantumState& s) {
  if (s.kind == Angular::total) return s.n_r + s.angular + 0.5;
  return s.n_r + s.angular + 1.0;
}

struct LevelCount {
  std::optional<int> exact;  // nullopt: infinitely many levels
  std::optional<int> wkb;
};

namespace detail {

inline void check_state(const PotentialModel& model, const QuantumState& s) {
  if (s.n_r < 0) fail(ErrorCode::InvalidParameter, "n_r >= 0 required");
  const QuantumState expect = state_of(model, s.n_r);
  if (s.kind != expect.kind || s.angular != expect.angular || s.dim != expect.dim) {
    fail(ErrorCode::InvalidParameter, "state labels do not match the model");
  }
}

// Number of n >= 0 with bracket(n) = top - (n + 1/2) > 0.
inline int strict_count(double top) {
  const double x = top - 0.5;
  if (x <= 0.0) return 0;
  return static_cast<int>(std::ceil(x));
}

inline double mpt_exact_top(const PotentialModel& m) {
  return 0.5 * std::sqrt(4.0 * well_strength(m) + 1.0);
}

inline double mpt_wkb_top(const PotentialModel& m) { return std::sqrt(well_strength(m)); }

inline double relativistic(double mu, double d) {
  const double t = mu / d;
  return 1.0 / std::sqrt(1.0 + t * t);
}

}  // namespace detail

inline LevelCount level_count(const PotentialModel& model) {
  LevelCount c;
  if (model.kind() == PotentialKind::modified_poschl_teller) {
    c.exact = detail::strict_count(detail::mpt_exact_top(model));
    c.wkb = detail::strict_count(detail::mpt_wkb_top(model));
  }
  return c;
}

inline EnergyLevel exact_level(const PotentialModel& model, const QuantumState& state) {
  detail::check_state(model, state);
  const int n = state.n_r;
  double e = 0.0;
  switch (model.kind()) {
    case PotentialKind::coulomb:
    case PotentialKind::kepler_nd: {
      const double z = model.param("Z");
      const double d = n + model.angular_label() + 0.5 * (model.dim() - 1);
      e = -z * z / (2.0 * d * d);
      break;
    }
    case PotentialKind::relativistic_kg:
      e = detail::relativistic(model.param("mu"), n + 1.0 + model.nu());
      break;
    case PotentialKind::dirac:
      e = detail::relativistic(model.param("mu"), n + model.nu());
      break;
    case PotentialKind::kratzer: {
      const double g2 = model.param("gamma2");
      const double d = n + model.indicial_exponent();
      e = -g2 * g2 / (d * d);
      break;
    }
    case PotentialKind::oscillator_nd:
      e = 2.0 * n + model.angular_label() + 0.5 * model.dim();
      break;
    case PotentialKind::poschl_teller: {
      const double s = model.param("a") + model.param("b") + 2.0 * n;
      e = 0.5 * model.param("V0") * s * s;
      break;
    }
    case PotentialKind::modified_poschl_teller: {
      const double bracket = detail::mpt_exact_top(model) - (n + 0.5);
      if (!(bracket > 0.0)) {
        fail(ErrorCode::NoSuchBoundState,
             "n = " + std::to_string(n) + " is not strictly bound (exact count " +
                 std::to_string(*level_count(model).exact) + ")");
      }
      e = -bracket * bracket;
      break;
    }
  }
  return {e, Method::exact, state};
}

inline EnergyLevel wkb_closed_level(const PotentialModel& model, const QuantumState& state) {
  detail::check_state(model, state);
  require_wkb_branch(model);
  const int k = state.n_r - model.index_offset();
  if (k < 0) {
    fail(ErrorCode::NoSuchBoundState,
         "this form of the equation has no solution with n_r = " + std::to_string(state.n_r));
  }
  // Every radial kind: b/(2 sqrt a) = k + 1/2 + sqrt(C) =: N.
  const double big_n = k + 0.5 + std::sqrt(model.centrifugal_langer());
  double e = 0.0;
  switch (model.kind()) {
    case PotentialKind::coulomb:
    case PotentialKind::kepler_nd: {
      const double z = model.param("Z");
      e = -z * z / (2.0 * big_n * big_n);
      break;
    }
    case PotentialKind::relativistic_kg:
    case PotentialKind::dirac:
      e = detail::relativistic(model.param("mu"), big_n);
      break;
    case PotentialKind::kratzer: {
      const double g2 = model.param("gamma2");
      e = -g2 * g2 / (big_n * big_n);
      break;
    }
    case PotentialKind::oscillator_nd:
      // b/(2 sqrt a) = E/2 and sqrt c = sqrt(C)/2 in the xi variable.
      e = 2.0 * k + 1.0 + std::sqrt(model.centrifugal_langer());
      break;
    case PotentialKind::poschl_teller: {
      const double root_a = 2.0 * k + 1.0 + std::sqrt(model.centrifugal_langer_cos()) +
                            std::sqrt(model.centrifugal_langer());
      e = 0.5 * model.param("V0") * root_a * root_a;
      break;
    }
    case PotentialKind::modified_poschl_teller: {
      const double bracket = detail::mpt_wkb_top(model) - (k + 0.5);
      if (!(bracket > 0.0)) {
        fail(ErrorCode::NoSuchBoundState,
             "n = " + std::to_string(k) + " exceeds the semiclassical count " +
                 std::to_string(*level_count(model).wkb));
      }
      e = -bracket * bracket;
      break;
    }
  }
  return {e, Method::wkb_closed, state};
}

}  // namespace sommerfeld
