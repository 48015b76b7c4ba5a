#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "sommerfeld/closed_form_spectra.hpp"

using namespace sommerfeld;

namespace {

double exact(const PotentialModel& m, int n_r) { return exact_level(m, state_of(m, n_r)).value; }
double wkb(const PotentialModel& m, int n_r) { return wkb_closed_level(m, state_of(m, n_r)).value; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidParameter;
}

PotentialModel mpt(double kappa2) {
  return build_model(PotentialKind::modified_poschl_teller, {{"V0", 0.5 * kappa2}});
}

}  // namespace

TEST(ClosedForm, Examples) {
  const auto c = build_model(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 0.0}});
  EXPECT_DOUBLE_EQ(exact(c, 0), -0.5);
  EXPECT_DOUBLE_EQ(wkb(c, 1), -0.125);
  EXPECT_EQ(exact_level(c, state_of(c, 0)).method, Method::exact);
  EXPECT_EQ(wkb_closed_level(c, state_of(c, 0)).method, Method::wkb_closed);

  const auto d = build_model(PotentialKind::dirac, {{"mu", 0.5}, {"j", 0.5}});
  EXPECT_NEAR(exact(d, 0), std::sqrt(0.75), 1e-15);

  const auto kg = build_model(PotentialKind::relativistic_kg, {{"mu", 0.3}, {"l", 0.0}});
  EXPECT_NEAR(exact(kg, 0), 3.0 / std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(kg.nu(), -0.1, 1e-15);

  const auto kr = build_model(PotentialKind::kratzer, {{"gamma2", 2.0}, {"l", 0.0}});
  EXPECT_NEAR(exact(kr, 0), -1.0, 1e-15);

  const auto pt = build_model(PotentialKind::poschl_teller, {{"a", 2.0}, {"b", 2.0}});
  EXPECT_DOUBLE_EQ(exact(pt, 0), 8.0);

  const auto k5 = build_model(PotentialKind::kepler_nd, {{"Z", 1.0}, {"l", 0.0}}, 5);
  EXPECT_DOUBLE_EQ(exact(k5, 0), -0.125);
}

// hbar omega (2 n_r + l + dim/2); the printed constant 1/2 is the dim = 1 case
TEST(ClosedForm, OscillatorConstant) {
  const auto o3 = build_model(PotentialKind::oscillator_nd, {{"l", 0.0}});
  EXPECT_DOUBLE_EQ(exact(o3, 0), 1.5);
  const auto o1 = build_model(PotentialKind::oscillator_nd, {{"l", 0.0}}, 1);
  EXPECT_DOUBLE_EQ(exact(o1, 0), 0.5);
  const auto o1odd = build_model(PotentialKind::oscillator_nd, {{"l", 1.0}}, 1);
  EXPECT_DOUBLE_EQ(exact(o1odd, 0), 1.5);
}

TEST(ClosedForm, SechWellGap) {
  const auto m = mpt(6.0);
  EXPECT_NEAR(wkb(m, 0), oracle::sech2_wkb(0, 6.0), 1e-14);
  EXPECT_NEAR(wkb(m, 0), -3.800510, 5e-7);
  EXPECT_DOUBLE_EQ(exact(m, 0), -4.0);
  EXPECT_DOUBLE_EQ(exact(m, 1), -1.0);
  EXPECT_GT(std::fabs(wkb(m, 0) - exact(m, 0)) / 4.0, 1e-3);
  // n = 2 sits exactly at the threshold and is not counted
  EXPECT_EQ(code_of([&] { exact(m, 2); }), ErrorCode::NoSuchBoundState);
  EXPECT_EQ(code_of([&] { wkb(m, 2); }), ErrorCode::NoSuchBoundState);
}

TEST(ClosedForm, LevelCount) {
  const auto c = level_count(build_model(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 0.0}}));
  EXPECT_FALSE(c.exact.has_value());
  EXPECT_FALSE(c.wkb.has_value());
  const auto pt = level_count(build_model(PotentialKind::poschl_teller, {{"a", 2.0}, {"b", 2.0}}));
  EXPECT_FALSE(pt.exact.has_value());

  const auto m = level_count(mpt(6.0));
  ASSERT_TRUE(m.exact && m.wkb);
  EXPECT_EQ(*m.exact, 2);
  EXPECT_EQ(*m.wkb, 2);

  // between the two thresholds the counts differ
  const auto m2 = level_count(mpt(6.2));
  EXPECT_EQ(*m2.exact, 3);
  EXPECT_EQ(*m2.wkb, 2);
}

TEST(ClosedForm, SechWellCountsMatchBracketPositivity) {
  oracle::Sampler rng(5);
  for (int i = 0; i < 300; ++i) {
    const double k2 = rng.uniform(0.1, 60.0);
    const auto count = level_count(mpt(k2));
    int ne = 0, nw = 0;
    while (0.5 * std::sqrt(4.0 * k2 + 1.0) - 0.5 - ne > 0.0) ++ne;
    while (std::sqrt(k2) - 0.5 - nw > 0.0) ++nw;
    EXPECT_EQ(*count.exact, ne) << k2;
    EXPECT_EQ(*count.wkb, nw) << k2;
  }
}

// Against the textbook formulas written out in the test.
TEST(ClosedForm, MatchesIndependentFormulas) {
  oracle::Sampler rng(7);
  for (int i = 0; i < 200; ++i) {
    const int n = rng.integer(0, 6);
    const int l = rng.integer(0, 4);
    const double Z = rng.uniform(0.2, 5.0);
    const auto c = build_model(PotentialKind::coulomb, {{"Z", Z}, {"l", double(l)}});
    EXPECT_NEAR(exact(c, n), Z * Z * oracle::hydrogen(n, l), 1e-14 * Z * Z);

    const int dim = rng.integer(2, 9);
    const auto k = build_model(PotentialKind::kepler_nd, {{"Z", 1.0}, {"l", double(l)}}, dim);
    EXPECT_NEAR(exact(k, n), oracle::hydrogen(n, l, dim), 1e-15);

    const double mu = rng.uniform(0.01, l + 0.49);
    const auto kg = build_model(PotentialKind::relativistic_kg, {{"mu", mu}, {"l", double(l)}});
    EXPECT_NEAR(exact(kg, n), oracle::klein_gordon(n, l, mu), 1e-14);

    const double j = l + 0.5;
    const auto d = build_model(PotentialKind::dirac, {{"mu", mu}, {"j", j}});
    EXPECT_NEAR(exact(d, n), oracle::dirac(n, j, mu), 1e-14);

    const double g2 = rng.log_uniform(0.1, 100.0);
    const auto kr = build_model(PotentialKind::kratzer, {{"gamma2", g2}, {"l", double(l)}});
    EXPECT_NEAR(exact(kr, n), oracle::kratzer(n, l, g2), 1e-13 * g2 * g2);

    const auto o = build_model(PotentialKind::oscillator_nd, {{"l", double(l)}}, dim);
    EXPECT_DOUBLE_EQ(exact(o, n), oracle::oscillator(n, l, dim));

    const double a = rng.uniform(1.01, 5.0), b = rng.uniform(1.01, 5.0);
    const double V0 = rng.uniform(0.1, 3.0);
    const auto pt =
        build_model(PotentialKind::poschl_teller, {{"a", a}, {"b", b}, {"V0", V0}, {"alpha", 1.7}});
    EXPECT_NEAR(exact(pt, n), oracle::poschl_teller(n, a, b, V0), 1e-12 * exact(pt, n));
  }
}

// The semiclassical closed form reproduces the exact one for every kind but
// the sech^2 well.
TEST(ClosedForm, PuzzleIdentitySweep) {
  oracle::Sampler rng(2024);
  auto same = [](double a, double b) { return std::fabs(a - b) <= 1e-12 * std::fabs(b); };
  for (int i = 0; i < 300; ++i) {
    const int n = rng.integer(0, 8);
    const int l = rng.integer(0, 5);
    std::vector<PotentialModel> ms;
    ms.push_back(build_model(PotentialKind::coulomb, {{"Z", rng.uniform(0.1, 4.0)}, {"l", double(l)}}));
    ms.push_back(build_model(PotentialKind::kepler_nd, {{"Z", rng.uniform(0.1, 4.0)}, {"l", double(l)}},
                             rng.integer(2, 10)));
    ms.push_back(build_model(PotentialKind::relativistic_kg,
                             {{"mu", rng.uniform(0.01, l + 0.49)}, {"l", double(l)}}));
    const double j = l + 0.5;
    ms.push_back(build_model(PotentialKind::dirac, {{"mu", rng.uniform(0.01, j - 0.01)}, {"j", j}}));
    ms.push_back(build_model(PotentialKind::kratzer,
                             {{"gamma2", rng.log_uniform(0.1, 50.0)}, {"l", double(l)}}));
    ms.push_back(build_model(PotentialKind::oscillator_nd, {{"l", double(l)}}, rng.integer(2, 9)));
    ms.push_back(build_model(PotentialKind::poschl_teller,
                             {{"a", rng.uniform(1.01, 6.0)}, {"b", rng.uniform(1.01, 6.0)},
                              {"V0", rng.uniform(0.2, 4.0)}}));
    for (const auto& m : ms) {
      EXPECT_PRED2(same, wkb(m, n), exact(m, n)) << kind_name(m.kind()) << " n=" << n;
    }
  }
}

TEST(ClosedForm, DiracSignedBranchShiftsTheIndex) {
  // nu_sign = +1 is the equation whose k-th solution is level n_r = k + 1
  const auto plus = build_model(PotentialKind::dirac, {{"mu", 0.4}, {"j", 1.5}, {"nu_sign", 1.0}});
  const auto minus = build_model(PotentialKind::dirac, {{"mu", 0.4}, {"j", 1.5}});
  EXPECT_EQ(code_of([&] { wkb(plus, 0); }), ErrorCode::NoSuchBoundState);
  for (int n = 1; n < 5; ++n) {
    EXPECT_NEAR(wkb(plus, n), exact(minus, n), 1e-15);
    // both parent l = j -+ 1/2 carry the same level
    EXPECT_EQ(exact(plus, n), exact(minus, n));
  }
}

TEST(ClosedForm, MonotoneInRadialNumber) {
  std::vector<PotentialModel> ms = {
      build_model(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 1.0}}),
      build_model(PotentialKind::relativistic_kg, {{"mu", 0.3}, {"l", 0.0}}),
      build_model(PotentialKind::dirac, {{"mu", 0.5}, {"j", 0.5}}),
      build_model(PotentialKind::kratzer, {{"gamma2", 10.0}, {"l", 0.0}}),
      build_model(PotentialKind::kepler_nd, {{"Z", 1.0}, {"l", 0.0}}, 2),
      build_model(PotentialKind::oscillator_nd, {{"l", 0.0}}, 1),
      build_model(PotentialKind::poschl_teller, {{"a", 1.5}, {"b", 3.0}}),
      mpt(30.0),
  };
  for (const auto& m : ms) {
    double prev = exact(m, 0);
    for (int n = 1; n < 4; ++n) {
      const double e = exact(m, n);
      EXPECT_GT(e, prev) << kind_name(m.kind());
      prev = e;
    }
  }
}

TEST(ClosedForm, NonrelativisticLimit) {
  for (double mu : {1e-2, 1e-3, 1e-4}) {
    // next order is O(mu^2); below 1e-4 E - 1 loses too many digits
    const double tol = 2.0 * mu * mu + 1e-7;
    for (int n_r = 0; n_r < 3; ++n_r) {
      for (int l = 0; l < 3; ++l) {
        const double n = n_r + l + 1.0;
        const auto kg = build_model(PotentialKind::relativistic_kg, {{"mu", mu}, {"l", double(l)}});
        EXPECT_NEAR((exact(kg, n_r) - 1.0) / (mu * mu), -0.5 / (n * n), tol);
        const double j = l + 0.5;
        const auto d = build_model(PotentialKind::dirac, {{"mu", mu}, {"j", j}});
        const double nd = n_r + j + 0.5;
        EXPECT_NEAR((exact(d, n_r) - 1.0) / (mu * mu), -0.5 / (nd * nd), tol);
      }
    }
  }
}

TEST(ClosedForm, CoulombDependsOnlyOnPrincipalNumber) {
  for (int n = 1; n < 6; ++n) {
    for (int l = 0; l < n; ++l) {
      const auto m = build_model(PotentialKind::coulomb, {{"Z", 1.0}, {"l", double(l)}});
      EXPECT_EQ(exact(m, n - l - 1), -0.5 / (n * n));
      EXPECT_EQ(principal_number(state_of(m, n - l - 1)), double(n));
    }
  }
  const auto d = build_model(PotentialKind::dirac, {{"mu", 0.1}, {"j", 1.5}});
  EXPECT_EQ(principal_number(state_of(d, 1)), 3.0);
}

TEST(ClosedForm, States) {
  const auto d = build_model(PotentialKind::dirac, {{"mu", 0.1}, {"j", 1.5}});
  const auto s = state_of(d, 2);
  EXPECT_EQ(s.kind, Angular::total);
  EXPECT_EQ(s.angular, 1.5);
  EXPECT_EQ(state_of(mpt(6.0), 0).kind, Angular::none);
  EXPECT_EQ(code_of([&] { exact_level(d, QuantumState{-1, Angular::total, 1.5, 3}); }),
            ErrorCode::InvalidParameter);
}
