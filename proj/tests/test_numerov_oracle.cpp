#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "sommerfeld/closed_form_spectra.hpp"
#include "sommerfeld/numerov_oracle.hpp"

using namespace sommerfeld;

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

double exact(const PotentialModel& m, int n_r) { return exact_level(m, state_of(m, n_r)).value; }

const PotentialModel coulomb = build_model(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 0.0}});

PotentialModel mpt(double kappa2) {
  return build_model(PotentialKind::modified_poschl_teller, {{"V0", 0.5 * kappa2}});
}

std::vector<PotentialModel> sweep_models() {
  std::vector<PotentialModel> ms;
  for (double Z : {1.0, 2.5}) {
    for (double l : {0.0, 1.0, 3.0}) ms.push_back(build_model(PotentialKind::coulomb, {{"Z", Z}, {"l", l}}));
  }
  for (double mu : {0.1, 0.3}) {
    for (double l : {0.0, 2.0}) ms.push_back(build_model(PotentialKind::relativistic_kg, {{"mu", mu}, {"l", l}}));
  }
  for (double mu : {0.1, 0.5}) {
    for (double j : {0.5, 1.5}) ms.push_back(build_model(PotentialKind::dirac, {{"mu", mu}, {"j", j}}));
  }
  for (double g2 : {2.0, 10.0}) {
    for (double l : {0.0, 1.0}) ms.push_back(build_model(PotentialKind::kratzer, {{"gamma2", g2}, {"l", l}}));
  }
  for (int dim : {2, 3, 5, 7}) {
    for (double l : {0.0, 1.0}) {
      ms.push_back(build_model(PotentialKind::kepler_nd, {{"Z", 1.0}, {"l", l}}, dim));
    }
  }
  for (int dim : {1, 3, 5}) {
    for (double l : {0.0, 1.0}) {
      ms.push_back(build_model(PotentialKind::oscillator_nd, {{"l", l}}, dim));
    }
  }
  for (double a : {1.5, 2.0, 3.0}) {
    for (double b : {1.5, 3.0}) ms.push_back(build_model(PotentialKind::poschl_teller, {{"a", a}, {"b", b}}));
  }
  ms.push_back(build_model(PotentialKind::poschl_teller, {{"a", 2.0}, {"b", 2.5}, {"alpha", 1.7}, {"V0", 0.6}}));
  ms.push_back(mpt(20.0));
  ms.push_back(mpt(6.0));
  ms.push_back(build_model(PotentialKind::modified_poschl_teller, {{"V0", 4.0}, {"alpha", 0.5}}));
  return ms;
}

std::string label(const PotentialModel& m) {
  std::string s(kind_name(m.kind()));
  for (const auto& [k, v] : m.params()) s += " " + k + "=" + std::to_string(v);
  return s + " dim=" + std::to_string(m.dim());
}

}  // namespace

TEST(Numerov, NodeExamples) {
  const auto g = default_grid(coulomb, -0.1, default_grid_points);
  EXPECT_EQ(count_nodes(coulomb, -0.3, g), 1);
  EXPECT_EQ(count_nodes(coulomb, -0.6, g), 0);
  const auto m = mpt(6.0);
  EXPECT_EQ(count_nodes(m, -2.0, default_grid(m, -0.5, default_grid_points)), 1);
}

TEST(Numerov, SolveExamples) {
  const auto c = solve_eigenvalue(coulomb, 1);
  EXPECT_NEAR(c.energy, -0.125, 1e-6);
  EXPECT_EQ(c.nodes, 1);

  const auto d = build_model(PotentialKind::dirac, {{"mu", 0.5}, {"j", 0.5}});
  EXPECT_NEAR(solve_eigenvalue(d, 0).energy, std::sqrt(0.75), 1e-6);

  const auto o = build_model(PotentialKind::oscillator_nd, {{"l", 0.0}});
  EXPECT_NEAR(solve_eigenvalue(o, 0).energy, 1.5, 1e-6);
}

TEST(Numerov, SpectrumExamples) {
  const auto c = oracle_spectrum(coulomb, 3);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0].value, -0.5, 1e-6);
  EXPECT_NEAR(c[1].value, -0.125, 1e-6);
  EXPECT_NEAR(c[2].value, -1.0 / 18, 1e-6);
  EXPECT_EQ(c[2].method, Method::numerov);

  // the n = 2 threshold state of the sech^2 well is not normalizable
  const auto m = oracle_spectrum(mpt(6.0), 3);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_NEAR(m[0].value, -4.0, 1e-6);
  EXPECT_NEAR(m[1].value, -1.0, 1e-6);

  const auto pt = oracle_spectrum(build_model(PotentialKind::poschl_teller, {{"a", 2.0}, {"b", 2.0}}), 2);
  ASSERT_EQ(pt.size(), 2u);
  EXPECT_NEAR(pt[0].value, 8.0, 8e-6);
  EXPECT_NEAR(pt[1].value, 18.0, 18e-6);
}

TEST(Numerov, WeaklyBoundLevel) {
  // decay length ~25/alpha: needs the long sinh-mapped grid
  const auto m = mpt(6.2);
  const auto r = solve_eigenvalue(m, 2);
  EXPECT_NEAR(r.energy, oracle::sech2_exact(2, 6.2), 1e-6 * std::fabs(r.energy));
  EXPECT_GT(r.grid.x_max, 500.0);
  EXPECT_EQ(oracle_spectrum(m, 5).size(), 3u);
}

TEST(Numerov, FixedGridSpectrum) {
  const auto g = default_grid(coulomb, -0.03, default_grid_points);
  const auto c = oracle_spectrum(coulomb, 3, g);
  ASSERT_EQ(c.size(), 3u);
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(c[n].value, exact(coulomb, n), 1e-6 * std::fabs(exact(coulomb, n)));
}

TEST(Numerov, FourthOrder) {
  const auto c = coulomb.with_langer(false);
  std::vector<RadialGrid> gc;
  for (int p : {1001, 2001, 4001}) gc.push_back(make_grid(c, 1e-6, 80.0, p));
  const double pc = convergence_order(coulomb, 0, gc);
  EXPECT_GE(pc, 3.5);
  EXPECT_LE(pc, 4.5);

  const auto o = build_model(PotentialKind::oscillator_nd, {{"l", 0.0}}).with_langer(false);
  std::vector<RadialGrid> go;
  for (int p : {1001, 2001, 4001}) go.push_back(make_grid(o, 1e-6, 12.0, p));
  const double po = convergence_order(o, 1, go);
  EXPECT_GE(po, 3.5);
  EXPECT_LE(po, 4.5);
}

TEST(Numerov, GridErrors) {
  const auto c = coulomb.with_langer(false);
  const auto g = make_grid(c, 1e-6, 80.0, 2001);
  EXPECT_EQ(code_of([&] { convergence_order(coulomb, 0, {g, g, g}); }), ErrorCode::InsufficientGrids);
  EXPECT_EQ(code_of([&] { convergence_order(coulomb, 0, {g, g}); }), ErrorCode::InsufficientGrids);
  EXPECT_EQ(code_of([&] { make_grid(c, 1e-6, 80.0, 63); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([&] { make_grid(c, -1.0, 80.0, 1000); }), ErrorCode::DomainViolation);

  const auto o1 = build_model(PotentialKind::oscillator_nd, {{"l", 0.0}}, 1);
  const auto coarse = make_grid(o1.with_langer(false), 0.0, 50.0, 64);
  EXPECT_EQ(code_of([&] { solve_eigenvalue(o1, 0, coarse); }), ErrorCode::GridTooCoarse);
}

TEST(Numerov, OtherErrors) {
  EXPECT_EQ(code_of([] { solve_eigenvalue(mpt(6.0), 2); }), ErrorCode::NoSuchBoundState);
  EXPECT_EQ(code_of([] { solve_eigenvalue(coulomb, -1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { solve_eigenvalue(coulomb, 0, 0.0); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { oracle_spectrum(coulomb, 0); }), ErrorCode::InvalidParameter);
}

TEST(Numerov, AgreesWithExactAcrossKinds) {
  for (const auto& m : sweep_models()) {
    for (int n = 0; n < 4; ++n) {
      double e = 0.0;
      try {
        e = exact(m, n);
      } catch (const Error&) {
        EXPECT_EQ(code_of([&] { solve_eigenvalue(m, n); }), ErrorCode::NoSuchBoundState) << label(m);
        continue;
      }
      const auto r = solve_eigenvalue(m, n);
      EXPECT_NEAR(r.energy, e, 1e-6 * std::fabs(e)) << label(m) << " n_r=" << n;
      EXPECT_EQ(r.nodes, n);
    }
  }
}

TEST(Numerov, NodeTheorem) {
  for (const auto& m : sweep_models()) {
    const auto spec = oracle_spectrum(m, 4);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double e = spec[i].value;
      if (i > 0) {
        EXPECT_GT(e, spec[i - 1].value);
      }
      const double below = i > 0 ? spec[i - 1].value : e - 1.0;
      const double gap = e - below;
      const double lo = e - 0.05 * gap;
      double hi = e + 0.05 * gap;
      if (i + 1 < spec.size()) hi = e + 0.05 * (spec[i + 1].value - e);
      if (m.bound_range().hi_finite()) hi = std::min(hi, e + 0.5 * (m.bound_range().hi - e));
      const auto g = default_grid(m, hi, default_grid_points);
      EXPECT_EQ(count_nodes(m, lo, g), int(i)) << label(m);
      EXPECT_EQ(count_nodes(m, hi, g), int(i) + 1) << label(m);
    }
  }
}

TEST(Numerov, OuterBoundaryDoesNotMatter) {
  std::vector<PotentialModel> ms = {
      coulomb,
      build_model(PotentialKind::kratzer, {{"gamma2", 2.0}, {"l", 1.0}}),
      build_model(PotentialKind::dirac, {{"mu", 0.5}, {"j", 0.5}}),
      build_model(PotentialKind::relativistic_kg, {{"mu", 0.3}, {"l", 0.0}}),
      build_model(PotentialKind::kepler_nd, {{"Z", 1.0}, {"l", 0.0}}, 5),
      build_model(PotentialKind::oscillator_nd, {{"l", 1.0}}),
  };
  for (const auto& m : ms) {
    const double e = exact(m, 2);
    const auto g = default_grid(m, e, default_grid_points);
    const int extra = static_cast<int>(std::lround(std::log(2.0) / g.h));
    const auto g2 = make_grid(m.with_langer(false), g.x_min, 2.0 * g.x_max, g.points + extra);
    const double a = solve_eigenvalue(m, 2, g).energy;
    const double b = solve_eigenvalue(m, 2, g2).energy;
    EXPECT_NEAR(a, b, 1e-8 * std::fabs(a)) << label(m);
  }
}

TEST(Numerov, DiracSignedEquation) {
  // nu_sign = +1 is the equation with the nu(nu+1) term; its lowest solution
  // is the n_r = 1 level
  const auto plus = build_model(PotentialKind::dirac, {{"mu", 0.5}, {"j", 0.5}, {"nu_sign", 1.0}});
  EXPECT_EQ(code_of([&] { solve_eigenvalue(plus, 0); }), ErrorCode::NoSuchBoundState);
  for (int n = 1; n < 4; ++n) {
    const auto r = solve_eigenvalue(plus, n);
    EXPECT_NEAR(r.energy, exact(plus, n), 1e-6 * exact(plus, n));
    EXPECT_EQ(r.nodes, n - 1);
  }
  const auto s = oracle_spectrum(plus, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].state.n_r, 1);
}

TEST(Numerov, Deterministic) {
  const auto k = build_model(PotentialKind::kratzer, {{"gamma2", 10.0}, {"l", 0.0}});
  EXPECT_EQ(solve_eigenvalue(k, 3).energy, solve_eigenvalue(k, 3).energy);
}
