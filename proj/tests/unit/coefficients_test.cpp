#include <gtest/gtest.h>
#include <gmpxx.h>

#include <cmath>

#include "test_support.hpp"
#include "varbound/bounds.hpp"
#include "varbound/coefficients.hpp"
#include "varbound/exactcheck.hpp"

using namespace varbound;

TEST(Lambda, Examples) {
  const auto l02 = lambda_solution(0, 2, 0.0);
  ASSERT_EQ(l02.size(), 2u);
  EXPECT_DOUBLE_EQ(l02[0], 1.0);
  EXPECT_DOUBLE_EQ(l02[1], -0.5);
  for (const double d : {0.0, -0.3, -1.0, -5.0}) EXPECT_DOUBLE_EQ(lambda_solution(0, 1, d)[0], 1.0);
  EXPECT_DOUBLE_EQ(lambda_solution(1, 1, 0.0)[0], 0.5);
}

TEST(Lambda, SolvesTheLinearSystemInFloatingPoint) {
  for (const double d : {0.0, -0.25, -1.0, -3.0}) {
    for (int m = 0; m <= 8; ++m) {
      for (int n = 1; n <= 8; ++n) {
        const auto lambda = lambda_solution(m, n, d);
        for (int r = 1; r <= n; ++r) {
          // Row r of A: (m+r)_c prod_{j=m+r-1}^{m+r+c-2} (1 - j delta)
          long double s = 0.0L;
          long double scale = 0.0L;
          for (int c = 1; c <= n; ++c) {
            long double entry = 1.0L;
            for (int t = 0; t < c; ++t) entry *= (m + r - t);
            for (int j = m + r - 1; j <= m + r + c - 2; ++j) entry *= 1.0L - j * static_cast<long double>(d);
            s += entry * lambda[static_cast<std::size_t>(c - 1)];
            scale += std::abs(entry * lambda[static_cast<std::size_t>(c - 1)]);
          }
          EXPECT_NEAR(static_cast<double>(s), 1.0, 1e-12 * std::max<double>(1.0, static_cast<double>(scale)))
              << "m=" << m << " n=" << n << " r=" << r << " delta=" << d;
        }
      }
    }
  }
}

TEST(Rho, Examples) {
  EXPECT_DOUBLE_EQ(rho_piecewise(3, 2, 1, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(rho_piecewise(1, 2, 1, 0.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(rho_piecewise(4, 2, 1, 0.0), 4.0 / 3.0);
}

TEST(Rho, PiecewiseMatchesLambdaSumExactly) {
  for (const auto& delta : {mpq_class(0), mpq_class(-1, 4), mpq_class(-1)}) {
    for (int m = 0; m <= 6; ++m)
      for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 20; ++k)
          ASSERT_EQ(rho_from_lambda(k, m, n, delta), rho_piecewise(k, m, n, delta))
              << "m=" << m << " n=" << n << " k=" << k << " delta=" << delta;
  }
}

TEST(Rho, PiecewiseMatchesLambdaSumInDouble) {
  for (const double d : {0.0, -0.2, -1.0})
    for (int m = 0; m <= 6; ++m)
      for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 14; ++k) {
          const double a = rho_from_lambda(k, m, n, d);
          const double b = rho_piecewise(k, m, n, d);
          EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b))) << m << ' ' << n << ' ' << k << ' ' << d;
        }
}

TEST(ResidualCoefficient, Examples) {
  EXPECT_DOUBLE_EQ(residual_coefficient(2, 0, 1, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(residual_coefficient(5, 0, 1, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(residual_coefficient(4, 1, 2, 0.0), 1.0 / 3.0);
  EXPECT_THROW(residual_coefficient(3, 1, 2, 0.0), std::invalid_argument);
}

TEST(ResidualCoefficient, IsSignedDistanceOfRhoFromOne) {
  for (const auto& delta : {mpq_class(0), mpq_class(-1, 3)})
    for (int m = 0; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n)
        for (int k = m + n + 1; k <= m + n + 8; ++k) {
          const mpq_class r = residual_coefficient(k, m, n, delta);
          EXPECT_GT(r, 0);
          const mpq_class rho = rho_piecewise(k, m, n, delta);
          EXPECT_EQ(n % 2 == 0 ? mpq_class(1 - rho) : mpq_class(rho - 1), r);
        }
}

TEST(Zeta, Examples) {
  EXPECT_DOUBLE_EQ(zeta(0, 1, 1, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(zeta(0, 1, 1, -1.0), 4.0);
  EXPECT_DOUBLE_EQ(zeta(0, 2, 2, 0.0), 6.0);
}

TEST(Zeta, ExceedsTheDeltaFreeRatio) {
  auto gen = vbtest::rng(2);
  std::uniform_int_distribution<int> order(0, 8);
  std::uniform_real_distribution<double> del(-4.0, 0.0);
  for (int trial = 0; trial < 500; ++trial) {
    int m1 = order(gen), m2 = order(gen);
    if (m1 == m2) continue;
    if (m1 > m2) std::swap(m1, m2);
    const int n = 1 + order(gen) % 6;
    const double d = del(gen);
    const double z = zeta(m1, m2, n, d);
    EXPECT_GT(z, 1.0);
    EXPECT_GE(z * (1 + 1e-12), falling(double(m2 + n), n) / falling(double(m1 + n), n));
  }
}

TEST(TheoremCoefficients, PositiveAndMatchLambda) {
  std::vector<double> qm{1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0};
  for (const double d : {0.0, -0.5}) {
    for (int m = 0; m <= 6; ++m)
      for (int n = 1; n <= 6; ++n) {
        const auto c = theorem_coefficients(m, n, d, qm);
        ASSERT_EQ(static_cast<int>(c.a.size()), m);
        ASSERT_EQ(static_cast<int>(c.b.size()), n);
        for (const double a : c.a) EXPECT_GT(a, 0.0);
        for (const double b : c.b) EXPECT_GT(b, 0.0);
        const auto lambda = lambda_solution(m, n, d);
        for (int i = 0; i < n; ++i) EXPECT_NEAR(c.lambda[i], lambda[i], 1e-14 * std::abs(lambda[i]));
      }
  }
}

TEST(TheoremCoefficients, LogSpaceAgreesWithDirectProducts) {
  auto gen = vbtest::rng(3);
  std::uniform_real_distribution<double> del(-6.0, 0.0);
  for (int trial = 0; trial < 60; ++trial) {
    const double d = del(gen);
    std::vector<double> qm{1.0};
    for (int i = 1; i <= 16; ++i) qm.push_back(qm.back() * (1.5 + 0.1 * i));
    const int m = trial % 9, n = 1 + trial % 7;
    const auto direct = theorem_coefficients(m, n, d, qm, false);
    const auto logged = theorem_coefficients(m, n, d, qm, true);
    for (int i = 0; i < m; ++i) EXPECT_NEAR(logged.a[i], direct.a[i], 1e-12 * direct.a[i]);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(logged.b[i], direct.b[i], 1e-12 * direct.b[i]);
  }
}

TEST(TheoremCoefficients, LogSpaceStaysFiniteForStronglyNegativeDelta) {
  std::vector<double> qm{1.0};
  for (int i = 1; i <= 24; ++i) qm.push_back(qm.back() * 50.0 * i);
  const auto c = theorem_coefficients(12, 12, -200.0, qm);
  for (const double a : c.a) EXPECT_TRUE(std::isfinite(a) && a > 0.0);
  for (const double b : c.b) EXPECT_TRUE(std::isfinite(b) && b > 0.0);
}

TEST(CorollaryFactor, MatchesZetaFromZeroToN) {
  for (const double d : {0.0, -0.25, -1.0})
    for (int n = 1; n <= 6; ++n)
      EXPECT_NEAR(corollary_factor(n, d), zeta(0, n, n, d), 1e-12 * zeta(0, n, n, d));
}

TEST(CapCoefficient, NormalOrderOneExample) {
  EXPECT_DOUBLE_EQ(cap_coefficient(0, 1, 1, 0.0), 0.5);
  EXPECT_THROW(cap_coefficient(0, 2, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(cap_coefficient(0, 1, 3, 0.0), std::invalid_argument);
}

TEST(CapCoefficient, BoundsEveryResidualWeightAtTopTau) {
  // u_tau pi_{k;tau} >= r_{k;m,n} for all k > m+n, with tau = m+n+1.
  for (const auto& delta : {mpq_class(0), mpq_class(-1, 2), mpq_class(-1)})
    for (int m = 0; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n) {
        const int tau = m + n + 1;
        for (int k = m + n + 1; k <= m + n + 30; ++k)
          ASSERT_GE(cap_coefficient(m, n, tau, delta) * spectral_weight(k, tau, delta),
                    residual_coefficient(k, m, n, delta))
              << m << ' ' << n << ' ' << k << ' ' << delta;
      }
}

TEST(CapCoefficient, WeightDominationFailsBelowTopTau) {
  // Known counterexample: Normal, m = 0, n = 1, tau = 1, k = 3 gives 3/2 < 2,
  // so the cap is not an upper bound on R for g = phi_3.
  EXPECT_EQ(cap_coefficient(0, 1, 1, mpq_class(0)) * spectral_weight(3, 1, mpq_class(0)), mpq_class(3, 2));
  EXPECT_EQ(residual_coefficient(3, 0, 1, mpq_class(0)), mpq_class(2));
}

TEST(CapCoefficient, TightAtFirstResidualDegree) {
  for (const auto& delta : {mpq_class(0), mpq_class(-1, 2)})
    for (int m = 0; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n)
        for (int tau = n; tau <= m + n + 1; ++tau)
          EXPECT_EQ(cap_coefficient(m, n, tau, delta) * spectral_weight(m + n + 1, tau, delta),
                    residual_coefficient(m + n + 1, m, n, delta));
}
