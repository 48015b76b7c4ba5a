#pragma once

// Catalog of the Sommerfeld-type (and two extended) bound-state problems.
//
// Every model is expressed in its own dimensionless units and exposes the
// effective momentum squared p^2(x, E) of the radial (or 1D) equation
// u'' + p^2(x, E) u = 0, either as the true equation or with the Langer
// replacement of the centrifugal coefficient.

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "sommerfeld/error.hpp"

namespace sommerfeld {

enum class PotentialKind {
  coulomb,
  relativistic_kg,
  dirac,
  kratzer,
  kepler_nd,
  oscillator_nd,
  poschl_teller,
  modified_poschl_teller,
};

inline constexpr std::array<PotentialKind, 8> all_kinds = {
    PotentialKind::coulomb,       PotentialKind::relativistic_kg,
    PotentialKind::dirac,         PotentialKind::kratzer,
    PotentialKind::kepler_nd,     PotentialKind::oscillator_nd,
    PotentialKind::poschl_teller, PotentialKind::modified_poschl_teller,
};

constexpr std::string_view kind_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::relativistic_kg: return "relativistic_kg";
    case PotentialKind::dirac: return "dirac";
    case PotentialKind::kratzer: return "kratzer";
    case PotentialKind::kepler_nd: return "kepler_nd";
    case PotentialKind::oscillator_nd: return "oscillator_nd";
    case PotentialKind::poschl_teller: return "poschl_teller";
    case PotentialKind::modified_poschl_teller: return "modified_poschl_teller";
  }
  return "unknown";
}

inline std::optional<PotentialKind> parse_kind(std::string_view name) {
  for (auto kind : all_kinds) {
    if (kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

enum class Family { radial, trigonometric, hyperbolic };

constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::radial: return "radial";
    case Family::trigonometric: return "trigonometric";
    case Family::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x > lo && x < hi; }
  bool lo_finite() const noexcept { return std::isfinite(lo); }
  bool hi_finite() const noexcept { return std::isfinite(hi); }
};

using Params = std::map<std::string, double, std::less<>>;

// Coefficients of a Sommerfeld-form momentum.
//   radial:        p^2 = -A + B/r - C/r^2 in `variable`
//   trigonometric: p^2 = A - B/cos^2(theta) - C/sin^2(theta)
//   hyperbolic:    p^2 = sech^2(y) - eps (only eps is meaningful)
struct PhaseTriple {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  Family family = Family::radial;
  std::string variable;
  double eps = 0.0;
};

class PotentialModel;
PotentialModel build_model(PotentialKind kind, Params params, int dim, bool langer = true);

class PotentialModel {
 public:
  PotentialKind kind() const noexcept { return kind_; }
  const Params& params() const noexcept { return params_; }
  int dim() const noexcept { return dim_; }
  Interval domain() const noexcept { return domain_; }
  const std::string& units() const noexcept { return units_; }
  bool langer() const noexcept { return langer_; }

  double param(std::string_view name) const {
    auto it = params_.find(name);
    if (it == params_.end()) {
      fail(ErrorCode::InvalidParameter, "model has no parameter '" + std::string(name) + "'");
    }
    return it->second;
  }

  Family family() const noexcept {
    switch (kind_) {
      case PotentialKind::poschl_teller: return Family::trigonometric;
      case PotentialKind::modified_poschl_teller: return Family::hyperbolic;
      default: return Family::radial;
    }
  }

  // Open energy interval that can hold bound states.
  Interval bound_range() const noexcept { return bound_range_; }

  PotentialModel with_langer(bool on) const {
    PotentialModel copy = *this;
    copy.langer_ = on;
    return copy;
  }

  bool uses_total_j() const noexcept { return kind_ == PotentialKind::dirac; }
  // l for orbital kinds, j for dirac, 0 for the Poschl-Teller wells.
  double angular_label() const noexcept { return angular_; }

  // nu of the relativistic kinds: sqrt((j+1/2)^2 - mu^2) for dirac,
  // -1/2 + sqrt((l+1/2)^2 - mu^2) for relativistic_kg.
  double nu() const noexcept { return nu_; }

  // Physical radial quantum number of the k-th solution of the model's
  // equation is k + index_offset(). Only the literal Dirac1 form (nu_sign = +1)
  // is shifted: its solutions start at n_r = 1.
  int index_offset() const noexcept { return index_offset_; }

  // Regular indicial exponent of u at the left end of the domain (u ~ x^s),
  // and at the right end for poschl_teller (u ~ (pi/(2 alpha) - x)^s).
  double indicial_exponent() const noexcept { return s_left_; }
  double right_indicial_exponent() const noexcept { return s_right_; }

  // Centrifugal coefficients of 1/x^2: the true equation's and the Langer one.
  // For poschl_teller these are the 1/sin^2 coefficient; see *_cos for 1/cos^2.
  double centrifugal_true() const noexcept { return cent_true_; }
  double centrifugal_langer() const noexcept { return cent_langer_; }
  double centrifugal_true_cos() const noexcept { return cent_true_cos_; }
  double centrifugal_langer_cos() const noexcept { return cent_langer_cos_; }

  // p^2(x, E) honoring the Langer flag. No domain check; hot inner loops call
  // this directly.
  double q(double x, double E) const noexcept { return q_impl(x, E, langer_); }
  double q_true(double x, double E) const noexcept { return q_impl(x, E, false); }

 private:
  friend PotentialModel build_model(PotentialKind, Params, int, bool);
  PotentialModel() = default;

  double q_impl(double x, double E, bool langer) const noexcept {
    const double c = langer ? cent_langer_ : cent_true_;
    // the dim = 1 oscillator is evaluated at x = 0 itself
    const double cent = c == 0.0 ? 0.0 : c / (x * x);
    switch (kind_) {
      case PotentialKind::coulomb:
      case PotentialKind::kepler_nd:
        return 2.0 * (E + charge_ / x) - cent;
      case PotentialKind::relativistic_kg:
      case PotentialKind::dirac:
        // (E + mu/x)^2 - 1 - c/x^2 with the mu^2/x^2 part folded into c.
        return (E * E - 1.0) + 2.0 * E * mu_ / x - cent;
      case PotentialKind::kratzer:
        return E + 2.0 * gamma2_ / x - cent;
      case PotentialKind::oscillator_nd:
        return 2.0 * E - x * x - cent;
      case PotentialKind::poschl_teller: {
        const double th = alpha_ * x;
        const double s = std::sin(th);
        const double co = std::cos(th);
        const double cent_cos = langer ? cent_langer_cos_ : cent_true_cos_;
        return alpha_ * alpha_ * (2.0 * E / v0_ - c / (s * s) - cent_cos / (co * co));
      }
      case PotentialKind::modified_poschl_teller: {
        const double ch = std::cosh(x);
        return E + kappa2_ / (ch * ch);
      }
    }
    return 0.0;
  }

  PotentialKind kind_ = PotentialKind::coulomb;
  Params params_;
  int dim_ = 3;
  Interval domain_;
  Interval bound_range_;
  std::string units_;
  bool langer_ = true;

  double angular_ = 0.0;
  double nu_ = 0.0;
  int index_offset_ = 0;
  double s_left_ = 0.0;
  double s_right_ = 0.0;
  double cent_true_ = 0.0;
  double cent_langer_ = 0.0;
  double cent_true_cos_ = 0.0;
  double cent_langer_cos_ = 0.0;

  double charge_ = 0.0;
  double mu_ = 0.0;
  double gamma2_ = 0.0;
  double alpha_ = 1.0;
  double v0_ = 1.0;
  double kappa2_ = 0.0;
};

constexpr int default_dim(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::poschl_teller:
    case PotentialKind::modified_poschl_teller:
      return 1;
    default:
      return 3;
  }
}

// Effective angular label that turns the R^n radial equation into the R^3 one.
inline double dimension_lift(int l, int dim) {
  if (l < 0) fail(ErrorCode::InvalidParameter, "l >= 0 required");
  if (dim < 1) fail(ErrorCode::UnsupportedDimension, "dim >= 1 required");
  return l + 0.5 * (dim - 3);
}

namespace detail {

inline bool is_nonneg_integer(double v) { return v >= 0.0 && std::floor(v) == v; }

inline bool is_half_odd(double v) {
  const double twice = 2.0 * v;
  return v >= 0.5 && std::floor(twice) == twice && std::fmod(twice, 2.0) == 1.0;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline double take(Params& params, std::string_view name) {
  auto it = params.find(name);
  if (it == params.end()) {
    fail(ErrorCode::InvalidParameter, "missing parameter '" + std::string(name) + "'");
  }
  if (!std::isfinite(it->second)) {
    fail(ErrorCode::InvalidParameter, "parameter '" + std::string(name) + "' must be finite");
  }
  return it->second;
}

inline double take_or(Params& params, std::string_view name, double fallback) {
  auto it = params.find(name);
  if (it == params.end()) {
    params.emplace(std::string(name), fallback);
    return fallback;
  }
  return take(params, name);
}

inline void require(bool ok, const std::string& constraint) {
  if (!ok) fail(ErrorCode::InvalidParameter, constraint);
}

inline void only_params(const Params& params, std::initializer_list<std::string_view> allowed,
                        PotentialKind kind) {
  for (const auto& [name, value] : params) {
    bool known = false;
    for (auto a : allowed) known = known || (a == name);
    if (!known) {
      fail(ErrorCode::InvalidParameter, "parameter '" + name + "' does not apply to " +
                                           std::string(kind_name(kind)));
    }
  }
}

inline double orbital_l(Params& params) {
  const double l = take(params, "l");
  require(is_nonneg_integer(l), "l must be a nonnegative integer (got " + fmt(l) + ")");
  return l;
}

}  // namespace detail

inline PotentialModel build_model(PotentialKind kind, Params params, int dim, bool langer) {
  using detail::require;
  constexpr double inf = std::numeric_limits<double>::infinity();

  PotentialModel m;
  m.kind_ = kind;
  m.dim_ = dim;
  m.langer_ = langer;
  m.domain_ = {0.0, inf};

  const bool three_d_kind = kind == PotentialKind::coulomb ||
                            kind == PotentialKind::relativistic_kg ||
                            kind == PotentialKind::dirac || kind == PotentialKind::kratzer;
  if (dim < 1) fail(ErrorCode::UnsupportedDimension, "dim >= 1 required");
  if (three_d_kind && dim != 3) {
    fail(ErrorCode::UnsupportedDimension,
         std::string(kind_name(kind)) + " is defined in dim = 3 only");
  }
  if ((kind == PotentialKind::poschl_teller || kind == PotentialKind::modified_poschl_teller) &&
      dim != 1) {
    fail(ErrorCode::UnsupportedDimension, std::string(kind_name(kind)) + " is one-dimensional");
  }

  switch (kind) {
    case PotentialKind::coulomb:
    case PotentialKind::kepler_nd: {
      detail::only_params(params, {"Z", "l"}, kind);
      m.charge_ = detail::take(params, "Z");
      require(m.charge_ > 0.0, "Z > 0 required");
      const double l = detail::orbital_l(params);
      if (dim == 1) {
        require(l <= 1.0, "dim = 1 admits only the parity labels l = 0, 1");
        require(l == 1.0, "kepler_nd in dim = 1 needs l = 1 (the even sector is singular)");
      }
      m.angular_ = l;
      const double lift = l + 0.5 * (dim - 3);
      m.cent_true_ = lift * (lift + 1.0);
      m.cent_langer_ = (lift + 0.5) * (lift + 0.5);
      m.s_left_ = lift + 1.0;
      m.bound_range_ = {-inf, 0.0};
      m.units_ = "x = r/a0, energies in E0 = e^2/a0 (a0 = hbar^2/(m e^2))";
      break;
    }
    case PotentialKind::relativistic_kg: {
      detail::only_params(params, {"mu", "l"}, kind);
      m.mu_ = detail::take(params, "mu");
      require(m.mu_ > 0.0, "mu > 0 required");
      const double l = detail::orbital_l(params);
      m.angular_ = l;
      if (m.mu_ >= l + 0.5) {
        fail(ErrorCode::SupercriticalCoupling,
             "mu = " + detail::fmt(m.mu_) + " >= l + 1/2: nu is not real");
      }
      const double root = std::sqrt((l + 0.5) * (l + 0.5) - m.mu_ * m.mu_);
      m.nu_ = -0.5 + root;
      m.cent_true_ = l * (l + 1.0) - m.mu_ * m.mu_;
      m.cent_langer_ = (l + 0.5) * (l + 0.5) - m.mu_ * m.mu_;
      m.s_left_ = 0.5 + root;
      m.bound_range_ = {-1.0, 1.0};
      m.units_ = "x = m c r/hbar, energies in m c^2 (eps = E/mc^2), mu = Z e^2/(hbar c)";
      break;
    }
    case PotentialKind::dirac: {
      detail::only_params(params, {"mu", "j", "nu_sign"}, kind);
      m.mu_ = detail::take(params, "mu");
      require(m.mu_ > 0.0, "mu > 0 required");
      const double j = detail::take(params, "j");
      require(detail::is_half_odd(j), "j must be one of 1/2, 3/2, 5/2, ... (got " +
                                          detail::fmt(j) + ")");
      const double sign = detail::take_or(params, "nu_sign", -1.0);
      require(sign == 1.0 || sign == -1.0, "nu_sign must be +1 or -1");
      m.angular_ = j;
      if (m.mu_ >= j + 0.5) {
        fail(ErrorCode::SupercriticalCoupling,
             "mu = " + detail::fmt(m.mu_) + " >= j + 1/2: nu is not real");
      }
      m.nu_ = std::sqrt((j + 0.5) * (j + 0.5) - m.mu_ * m.mu_);
      const double nu_eff = sign * m.nu_;
      m.cent_true_ = nu_eff * (nu_eff + 1.0);
      m.cent_langer_ = (nu_eff + 0.5) * (nu_eff + 0.5);
      m.s_left_ = sign > 0 ? m.nu_ + 1.0 : m.nu_;
      m.index_offset_ = sign > 0 ? 1 : 0;
      m.bound_range_ = {-1.0, 1.0};
      m.units_ = "x = m c r/hbar, energies in m c^2 (eps = E/mc^2), mu = Z e^2/(hbar c)";
      break;
    }
    case PotentialKind::kratzer: {
      detail::only_params(params, {"gamma2", "l"}, kind);
      m.gamma2_ = detail::take(params, "gamma2");
      require(m.gamma2_ > 0.0, "gamma2 > 0 required");
      const double l = detail::orbital_l(params);
      m.angular_ = l;
      m.cent_true_ = m.gamma2_ + l * (l + 1.0);
      m.cent_langer_ = m.gamma2_ + (l + 0.5) * (l + 0.5);
      m.s_left_ = 0.5 + std::sqrt(m.cent_langer_);
      m.bound_range_ = {-inf, 0.0};
      m.units_ = "x = r/a, energies in hbar^2/(2 m a^2), gamma2 = 2 m a^2 D/hbar^2";
      break;
    }
    case PotentialKind::oscillator_nd: {
      detail::only_params(params, {"l"}, kind);
      const double l = detail::orbital_l(params);
      if (dim == 1) require(l <= 1.0, "dim = 1 admits only the parity labels l = 0, 1");
      m.angular_ = l;
      const double lift = l + 0.5 * (dim - 3);
      m.cent_true_ = lift * (lift + 1.0);
      m.cent_langer_ = (lift + 0.5) * (lift + 0.5);
      m.s_left_ = lift + 1.0;
      m.bound_range_ = {0.0, inf};
      m.units_ = "x = r sqrt(m omega/hbar), energies in hbar omega";
      break;
    }
    case PotentialKind::poschl_teller: {
      detail::only_params(params, {"a", "b", "alpha", "V0"}, kind);
      const double a = detail::take(params, "a");
      const double b = detail::take(params, "b");
      m.alpha_ = detail::take_or(params, "alpha", 1.0);
      m.v0_ = detail::take_or(params, "V0", 1.0);
      require(a > 1.0, "a > 1 required");
      require(b > 1.0, "b > 1 required");
      require(m.alpha_ > 0.0, "alpha > 0 required");
      require(m.v0_ > 0.0, "V0 > 0 required");
      m.cent_true_ = a * (a - 1.0);
      m.cent_langer_ = (a - 0.5) * (a - 0.5);
      m.cent_true_cos_ = b * (b - 1.0);
      m.cent_langer_cos_ = (b - 0.5) * (b - 0.5);
      m.s_left_ = a;
      m.s_right_ = b;
      m.domain_ = {0.0, std::numbers::pi / (2.0 * m.alpha_)};
      m.bound_range_ = {0.0, inf};
      m.units_ = "x in length units with 0 < x < pi/(2 alpha), energies in the units of "
                 "V0 = hbar^2 alpha^2/m";
      break;
    }
    case PotentialKind::modified_poschl_teller: {
      detail::only_params(params, {"V0", "alpha"}, kind);
      m.v0_ = detail::take(params, "V0");
      m.alpha_ = detail::take_or(params, "alpha", 1.0);
      require(m.v0_ > 0.0, "V0 > 0 required");
      require(m.alpha_ > 0.0, "alpha > 0 required");
      m.kappa2_ = 2.0 * m.v0_ / (m.alpha_ * m.alpha_);
      m.domain_ = {-inf, inf};
      m.bound_range_ = {-m.kappa2_, 0.0};
      m.units_ = "hbar = m = 1, y = alpha x, energies in hbar^2 alpha^2/(2m), "
                 "kappa^2 = 2 m V0/(hbar^2 alpha^2)";
      break;
    }
  }
  m.params_ = std::move(params);
  return m;
}

inline PotentialModel build_model(PotentialKind kind, Params params) {
  return build_model(kind, std::move(params), default_dim(kind), true);
}

// kappa^2 = 2 m V0/(hbar^2 alpha^2) of the sech^2 well.
inline double well_strength(const PotentialModel& model) {
  if (model.kind() != PotentialKind::modified_poschl_teller) {
    fail(ErrorCode::NotApplicable, "well strength is defined for modified_poschl_teller only");
  }
  const double alpha = model.param("alpha");
  return 2.0 * model.param("V0") / (alpha * alpha);
}

// Coefficient of 1/x^2 after the Langer replacement, in the form the model's
// equation is usually displayed. poschl_teller has two such coefficients;
// this returns the 1/sin^2 one and langer_term_cos() the 1/cos^2 one.
inline double langer_term(const PotentialModel& model) {
  if (!model.langer()) fail(ErrorCode::NotApplicable, "model has the Langer rule switched off");
  switch (model.kind()) {
    case PotentialKind::modified_poschl_teller:
      fail(ErrorCode::NotApplicable, "no Langer-type modification for the sech^2 well");
    case PotentialKind::dirac: {
      const double mu = model.param("mu");
      return model.centrifugal_langer() + mu * mu;
    }
    default:
      return model.centrifugal_langer();
  }
}

inline double langer_term_cos(const PotentialModel& model) {
  if (model.kind() != PotentialKind::poschl_teller) {
    fail(ErrorCode::NotApplicable, "1/cos^2 coefficient exists for poschl_teller only");
  }
  if (!model.langer()) fail(ErrorCode::NotApplicable, "model has the Langer rule switched off");
  return model.centrifugal_langer_cos();
}

inline double effective_momentum_squared(const PotentialModel& model, double E, double x) {
  if (!model.domain().contains(x)) {
    fail(ErrorCode::DomainViolation, "x = " + detail::fmt(x) + " outside the model domain");
  }
  return model.q(x, E);
}

// WKB with the Langer coefficient C = (s - 1/2)^2 reproduces the regular
// indicial branch only when s >= 1/2. Below that |sqrt(C)| picks the other
// branch, so the semiclassical route is refused.
inline void require_wkb_branch(const PotentialModel& model) {
  if (model.family() != Family::radial) return;
  const double root = model.indicial_exponent() - 0.5;
  if (root < 0.0) {
    fail(ErrorCode::OutOfBoundRange,
         "Langer root s - 1/2 = " + detail::fmt(root) +
             " < 0: the semiclassical condition selects the other indicial branch");
  }
}

inline PhaseTriple abc_coefficients(const PotentialModel& model, double E) {
  if (!model.langer() && model.family() != Family::hyperbolic) {
    fail(ErrorCode::NotApplicable, "abc coefficients refer to the Langer-modified momentum");
  }
  auto out_of_range = [&](const std::string& what) {
    fail(ErrorCode::OutOfBoundRange, "E = " + detail::fmt(E) + " violates " + what);
  };
  require_wkb_branch(model);

  PhaseTriple t;
  t.family = model.family();
  t.variable = "x";
  const double C = model.centrifugal_langer();
  switch (model.kind()) {
    case PotentialKind::coulomb:
    case PotentialKind::kepler_nd:
      if (!(E < 0.0)) out_of_range("E < 0");
      t.A = -2.0 * E;
      t.B = 2.0 * model.param("Z");
      t.C = C;
      break;
    case PotentialKind::relativistic_kg:
    case PotentialKind::dirac:
      if (!(std::fabs(E) < 1.0)) out_of_range("|E| < 1");
      t.A = 1.0 - E * E;
      t.B = 2.0 * model.param("mu") * E;
      t.C = C;
      break;
    case PotentialKind::kratzer:
      if (!(E < 0.0)) out_of_range("E < 0");
      t.A = -E;
      t.B = 2.0 * model.param("gamma2");
      t.C = C;
      break;
    case PotentialKind::oscillator_nd:
      if (!(E > 0.0)) out_of_range("E > 0");
      t.A = 0.25;
      t.B = 0.5 * E;
      t.C = 0.25 * C;
      t.variable = "xi = x^2";
      break;
    case PotentialKind::poschl_teller:
      if (!(E > 0.0)) out_of_range("E > 0");
      t.A = 2.0 * E / model.param("V0");
      t.B = model.centrifugal_langer_cos();
      t.C = C;
      t.variable = "theta = alpha x";
      break;
    case PotentialKind::modified_poschl_teller: {
      const double k2 = well_strength(model);
      t.eps = -E / k2;
      if (!(t.eps > 0.0 && t.eps <= 1.0)) out_of_range("-kappa^2 <= E < 0");
      t.variable = "eps = -E/V0";
      break;
    }
  }
  return t;
}

}  // namespace sommerfeld
