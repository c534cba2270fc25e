#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <limits>
#include <random>

#include "mrakit/fixtures.hpp"
#include "mrakit/signal.hpp"
#include "test_support.hpp"

namespace mrakit {
namespace {

using testing::periodize_extend;
using testing::random_function;

TEST(Grid, CountMatchesSupportExactly) {
  const DyadicGrid g = make_grid(3, -1.0, 2.5);
  EXPECT_EQ(g.first, -8);
  EXPECT_EQ(g.count, 28);
  EXPECT_EQ(g.support_lo(), -1.0);
  EXPECT_EQ(g.support_hi(), 2.5);
}

TEST(Grid, MisalignedSupportIsRejected) {
  EXPECT_THROW(make_grid(1, 0.0, 0.3), Error);
}

TEST(SampledFunction, RejectsNonFiniteSamples) {
  EXPECT_THROW(SampledFunction(DyadicGrid{0, 0, 1}, {Complex(NAN, 0)}), Error);
  EXPECT_THROW(SampledFunction(DyadicGrid{0, 0, 2}, {Complex(1, 0)}), Error);
}

TEST(Fixtures, SampledExactlyAtGridPoints) {
  const SampledFunction p = fixtures::pulse(2);
  EXPECT_EQ(p.size(), 4);
  for (const Complex& v : p.values()) EXPECT_EQ(v, Complex(1.0));
  EXPECT_EQ(p(1.0), Complex(0.0));  // half-open support
  const SampledFunction h = fixtures::hat(2);
  EXPECT_EQ(h.at_index(4), Complex(1.0));
  EXPECT_EQ(h.at_index(2), Complex(0.5));
  const SampledFunction b = fixtures::cos2_bump(3);
  for (std::int64_t k = 0; k < b.size(); ++k) {
    EXPECT_EQ(b.values()[static_cast<std::size_t>(k)], Complex(fixtures::cos2_bump_value(b.grid().x(k))));
  }
}

TEST(Fixtures, CubicBSplineMatchesPiecewiseFormula) {
  // N_3 on [0,3): x^2/2, (-2x^2 + 6x - 3)/2, (3 - x)^2/2.
  EXPECT_DOUBLE_EQ(fixtures::bspline_value(3, 0.5), 0.125);
  EXPECT_DOUBLE_EQ(fixtures::bspline_value(3, 1.5), 0.75);
  EXPECT_DOUBLE_EQ(fixtures::bspline_value(3, 2.5), 0.125);
}

TEST(Translate, ShiftsSupport) {
  const SampledFunction t = translate(fixtures::pulse(0), 1);
  EXPECT_EQ(t.grid().support_lo(), 1.0);
  EXPECT_EQ(t.grid().support_hi(), 2.0);
  EXPECT_EQ(t.values()[0], Complex(1.0));
}

TEST(Translate, ZeroShiftIsIdentityAndInverseIsExact) {
  const SampledFunction f = fixtures::cos2_bump(5);
  const SampledFunction same = translate(f, 0);
  EXPECT_EQ(same.grid(), f.grid());
  const SampledFunction back = translate(translate(f, 1), -1);
  EXPECT_EQ(back.grid(), f.grid());
  for (std::int64_t k = 0; k < f.size(); ++k) EXPECT_EQ(back.values()[static_cast<std::size_t>(k)], f.values()[static_cast<std::size_t>(k)]);
}

TEST(Translate, CoarseGridRejectsUnrepresentableShift) {
  const SampledFunction f(DyadicGrid{-1, 0, 1}, {Complex(1.0)});
  EXPECT_THROW(translate(f, 1), Error);
  EXPECT_NO_THROW(translate(f, 2));
}

TEST(Dilate, PulseBecomesNarrowerAndTaller) {
  const SampledFunction d = dilate(fixtures::pulse(0), 1);
  EXPECT_EQ(d.resolution(), 1);
  EXPECT_EQ(d.grid().support_lo(), 0.0);
  EXPECT_EQ(d.grid().support_hi(), 0.5);
  EXPECT_DOUBLE_EQ(d.values()[0].real(), std::numbers::sqrt2);
}

TEST(Dilate, ZeroIsIdentityAndRoundTripIsWithinRounding) {
  const SampledFunction f = fixtures::raised_cosine(0.5, 6);
  const SampledFunction d0 = dilate(f, 0);
  EXPECT_EQ(d0.grid(), f.grid());
  for (int j : {1, -1, 3, -4}) {
    const SampledFunction r = dilate(dilate(f, j), -j);
    EXPECT_EQ(r.grid(), f.grid());
    for (std::int64_t k = 0; k < f.size(); ++k) {
      const double v = f.values()[static_cast<std::size_t>(k)].real();
      EXPECT_NEAR(r.values()[static_cast<std::size_t>(k)].real(), v, 4e-16 * std::abs(v) + 1e-300);
    }
  }
}

TEST(ComposeDT, MatchesFormulaAndDefinition) {
  const SampledFunction c = compose_dt(fixtures::pulse(0), 1, 1);
  EXPECT_EQ(c.grid().support_lo(), 0.5);
  EXPECT_EQ(c.grid().support_hi(), 1.0);
  EXPECT_DOUBLE_EQ(c.values()[0].real(), std::numbers::sqrt2);
  const SampledFunction f = fixtures::hat(4);
  const SampledFunction a = compose_dt(f, 2, -3);
  const SampledFunction b = dilate(translate(f, -3), 2);
  EXPECT_EQ(a.grid(), b.grid());
  for (std::int64_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.values()[static_cast<std::size_t>(k)], b.values()[static_cast<std::size_t>(k)]);
}

TEST(ComposeDT, CommutationUsesExponentTwoToMinusJTimesN) {
  // D^j T^n f = T^{2^-j n} D^j f.
  const SampledFunction f = fixtures::cos2_bump(4);
  for (int j : {1, 2, 3}) {
    for (std::int64_t n : {-3, 1, 5}) {
      const SampledFunction lhs = compose_dt(f, j, n);
      const SampledFunction rhs = translate_by(dilate(f, j), DyadicRational{n, j});
      EXPECT_EQ(lhs.grid(), rhs.grid());
      for (std::int64_t k = 0; k < lhs.size(); ++k) EXPECT_EQ(lhs.values()[static_cast<std::size_t>(k)], rhs.values()[static_cast<std::size_t>(k)]);
    }
  }
}

TEST(Periodize, PulseAndBumpGiveOne) {
  const SampledFunction p = periodize(fixtures::pulse(4), 1);
  for (const Complex& v : p.values()) EXPECT_EQ(v, Complex(1.0));
  const SampledFunction b = periodize(fixtures::cos2_bump(8), 1);
  EXPECT_EQ(b.grid().support_lo(), 0.0);
  EXPECT_EQ(b.grid().support_hi(), 1.0);
  for (const Complex& v : b.values()) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-12);
}

TEST(Periodize, PeriodicUnderUnitShift) {
  const SampledFunction f = fixtures::hat(5);
  const SampledFunction p = periodize(f, 1);
  // Periodizing the shifted function gives the same samples on [0,1).
  const SampledFunction q = periodize(translate(f, 1), 1);
  for (std::int64_t k = 0; k < p.size(); ++k) EXPECT_EQ(p.values()[static_cast<std::size_t>(k)], q.values()[static_cast<std::size_t>(k)]);
  const SampledFunction two = periodize(f, 2);
  EXPECT_EQ(two.size(), 64);
}

TEST(InnerProduct, ExactCases) {
  const SampledFunction p = fixtures::pulse(6);
  EXPECT_EQ(inner_product(p, p), Complex(1.0));
  EXPECT_EQ(inner_product(p, translate(p, 1)), Complex(0.0));
  EXPECT_THROW(inner_product(p, fixtures::pulse(5)), Error);
}

TEST(InnerProduct, SineSquaredIntegral) {
  // int_0^2 sin^2(pi x) dx = 1 (oracle: mpmath quadrature).
  for (int J : {4, 8, 10}) {
    const SampledFunction s = fixtures::sine(0.0, 2.0, J);
    EXPECT_NEAR(inner_product(s, s).real(), 1.0, std::ldexp(1.0, -2 * J));
  }
}

TEST(InnerProduct, ConjugateSymmetricForRealInputs) {
  const SampledFunction a = fixtures::hat(6);
  const SampledFunction b = translate(fixtures::cos2_bump(6), 1);
  EXPECT_EQ(inner_product(a, b), std::conj(inner_product(b, a)));
}

TEST(Resample, IdempotentAndAffineExact) {
  const SampledFunction f = fixtures::hat(3);
  const SampledFunction same = resample(f, 3);
  EXPECT_EQ(same.grid(), f.grid());
  const SampledFunction line = sample(make_grid(2, 0.0, 1.0), [](double x) { return x; });
  const SampledFunction fine = resample(line, 6);
  // The interior reproduces x exactly; the last cell holds its left sample.
  for (std::int64_t k = 0; k < fine.size(); ++k) {
    const double x = fine.grid().x(k);
    const double expected = x < 0.75 ? x : 0.75;
    EXPECT_DOUBLE_EQ(fine.values()[static_cast<std::size_t>(k)].real(), expected);
  }
  EXPECT_THROW(resample(f, 2), Error);
}

TEST(Resample, PulseOnWiderSupportRampsAcrossJump) {
  const SampledFunction p = sample(make_grid(0, 0.0, 2.0), [](double x) { return x < 1.0 ? 1.0 : 0.0; });
  const SampledFunction r = resample(p, 3);
  EXPECT_EQ(r.size(), 16);
  for (int k = 0; k < 8; ++k) EXPECT_DOUBLE_EQ(r.values()[k].real(), 1.0 - k / 8.0);
  for (int k = 8; k < 16; ++k) EXPECT_EQ(r.values()[k], Complex(0.0));
}

TEST(Arithmetic, IdentitiesAndMismatch) {
  const SampledFunction f = fixtures::hat(4);
  const SampledFunction z = SampledFunction::zero(4);
  const SampledFunction s = add(f, z);
  EXPECT_EQ(s.grid(), f.grid());
  const SampledFunction one = scale(f, 1.0);
  for (std::int64_t k = 0; k < f.size(); ++k) {
    EXPECT_EQ(s.values()[static_cast<std::size_t>(k)], f.values()[static_cast<std::size_t>(k)]);
    EXPECT_EQ(one.values()[static_cast<std::size_t>(k)], f.values()[static_cast<std::size_t>(k)]);
  }
  EXPECT_THROW(add(f, fixtures::hat(5)), Error);
  EXPECT_THROW(pointwise_multiply(f, fixtures::hat(5)), Error);
}

TEST(Arithmetic, UnionSupportZeroExtends) {
  const SampledFunction a = fixtures::pulse(1);
  const SampledFunction b = translate(fixtures::pulse(1), 2);
  const SampledFunction s = add(a, b);
  EXPECT_EQ(s.grid().support_lo(), 0.0);
  EXPECT_EQ(s.grid().support_hi(), 3.0);
  EXPECT_EQ(s.at_index(2), Complex(0.0));
  EXPECT_EQ(s.at_index(4), Complex(1.0));
}

// --- randomized operator identities -------------------------------------------

class OperatorProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{0x5eed2024};
};

TEST_F(OperatorProperties, TranslationAndDilationAreUnitary) {
  for (int trial = 0; trial < 50; ++trial) {
    const SampledFunction f = random_function(rng, 5);
    const SampledFunction g = random_function(rng, 5);
    const Complex base = inner_product(f, g);
    const auto n = std::uniform_int_distribution<int>(-4, 4)(rng);
    const auto j = std::uniform_int_distribution<int>(-3, 3)(rng);
    EXPECT_LE(std::abs(inner_product(translate(f, n), translate(g, n)) - base), 1e-12);
    EXPECT_LE(std::abs(inner_product(dilate(f, j), dilate(g, j)) - base), 1e-12);
    EXPECT_EQ(norm(translate(f, n)), norm(f));
    EXPECT_NEAR(norm(dilate(f, j)), norm(f), 4 * std::numeric_limits<double>::epsilon() * norm(f));
  }
}

TEST_F(OperatorProperties, AdjointsAreInverses) {
  for (int trial = 0; trial < 50; ++trial) {
    const SampledFunction f = random_function(rng, 4);
    const SampledFunction g = random_function(rng, 4);
    const auto n = std::uniform_int_distribution<int>(-3, 3)(rng);
    EXPECT_LE(std::abs(inner_product(translate(f, n), g) - inner_product(f, translate(g, -n))), 1e-12);
    // D f lives at J+1; D^{-1} g must be compared at f's resolution, so g is
    // taken at J+1.
    const SampledFunction g_fine = resample(g, 5);
    EXPECT_LE(std::abs(inner_product(dilate(f, 1), g_fine) - inner_product(f, dilate(g_fine, -1))), 1e-12);
  }
}

TEST_F(OperatorProperties, ProductRule) {
  for (int trial = 0; trial < 50; ++trial) {
    const SampledFunction f = random_function(rng, 4);
    const SampledFunction g = random_function(rng, 4);
    const auto n = std::uniform_int_distribution<int>(-3, 3)(rng);
    const auto j = std::uniform_int_distribution<int>(-2, 3)(rng);
    const SampledFunction lhs = compose_dt(pointwise_multiply(f, g), j, n);
    const SampledFunction rhs =
        scale(pointwise_multiply(compose_dt(f, j, n), compose_dt(g, j, n)), std::pow(2.0, -j / 2.0));
    EXPECT_LE(max_abs_difference(lhs, rhs), 1e-12);
  }
}

TEST_F(OperatorProperties, PeriodizationIsSelfAdjoint) {
  for (int trial = 0; trial < 30; ++trial) {
    const SampledFunction f = random_function(rng, 5);
    // g supported in [0, 1).
    const SampledFunction g = restrict_to(random_function(rng, 5), make_grid(5, 0.0, 1.0));
    const Complex lhs = inner_product(periodize(f, 1), g);
    const Complex rhs = inner_product(f, periodize_extend(g, f.grid()));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(OperatorFixedPoint, ConstantIsEigenfunctionOfDilation) {
  // c 1_[0,1) extended periodically: D f = sqrt2 f wherever both are defined.
  const Complex c(0.75, 0.0);
  const SampledFunction f = fixtures::constant(c, -4.0, 4.0, 3);
  const SampledFunction d = dilate(f, 1);
  const SampledFunction window = restrict_to(resample(f, 4), d.grid());
  for (std::int64_t k = 0; k < d.size(); ++k) {
    EXPECT_NEAR(std::abs(d.values()[static_cast<std::size_t>(k)] - std::numbers::sqrt2 * window.values()[static_cast<std::size_t>(k)]),
                0.0, std::numeric_limits<double>::epsilon());
  }
}

}  // namespace
}  // namespace mrakit
