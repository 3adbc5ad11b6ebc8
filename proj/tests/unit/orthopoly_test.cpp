#include <gtest/gtest.h>
#include <gmpxx.h>

#include <boost/math/special_functions/hermite.hpp>
#include <boost/math/special_functions/jacobi.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include <cmath>
#include <sstream>

#include "test_support.hpp"
#include "varbound/coefficients.hpp"
#include "varbound/errors.hpp"
#include "varbound/orthopoly.hpp"

using namespace varbound;

namespace {

struct MonicRecurrence {
  std::vector<mpq_class> alpha;
  std::vector<mpq_class> beta;
};

// Chebyshev's algorithm on exact raw moments mu_0 .. mu_{2n-1}.
MonicRecurrence chebyshev_from_moments(const std::vector<mpq_class>& mu, int n) {
  MonicRecurrence r;
  std::vector<std::vector<mpq_class>> sigma(static_cast<std::size_t>(n + 1),
                                            std::vector<mpq_class>(static_cast<std::size_t>(2 * n)));
  for (int l = 0; l < 2 * n; ++l) sigma[1][l] = mu[l];  // row k+1 holds sigma_k
  r.alpha.push_back(mu[1] / mu[0]);
  r.beta.push_back(mu[0]);
  for (int k = 1; k < n; ++k) {
    for (int l = k; l < 2 * n - k; ++l) {
      sigma[k + 1][l] = sigma[k][l + 1] - r.alpha[k - 1] * sigma[k][l] - r.beta[k - 1] * sigma[k - 1][l];
    }
    r.alpha.push_back(sigma[k + 1][k + 1] / sigma[k + 1][k] - sigma[k][k] / sigma[k][k - 1]);
    r.beta.push_back(sigma[k + 1][k] / sigma[k][k - 1]);
  }
  return r;
}

std::vector<mpq_class> normal_moments(int count) {
  std::vector<mpq_class> mu;
  for (int k = 0; k < count; ++k) {
    mpq_class v = k % 2 == 1 ? 0 : 1;
    for (int j = k - 1; j > 0 && k % 2 == 0; j -= 2) v *= j;
    mu.push_back(v);
  }
  return mu;
}

std::vector<mpq_class> gamma_moments(const mpq_class& alpha, const mpq_class& rate, int count) {
  std::vector<mpq_class> mu{1};
  for (int k = 1; k < count; ++k) mu.push_back(mu.back() * (alpha + k - 1) / rate);
  return mu;
}

std::vector<mpq_class> beta_moments(const mpq_class& a, const mpq_class& b, int count) {
  std::vector<mpq_class> mu{1};
  for (int k = 1; k < count; ++k) mu.push_back(mu.back() * (a + k - 1) / (a + b + k - 1));
  return mu;
}

void expect_recurrence_matches(const PearsonDistribution& dist, const std::vector<mpq_class>& moments, int n) {
  const auto oracle = chebyshev_from_moments(moments, n);
  const auto table = recurrence(dist, n - 1);
  for (int k = 0; k < n; ++k) {
    const double a = oracle.alpha[k].get_d();
    EXPECT_NEAR(static_cast<double>(table.a[k]), a, 1e-13 * std::max(1.0, std::abs(a))) << dist.describe() << " k=" << k;
    if (k == 0) continue;
    const double b = oracle.beta[k].get_d();
    EXPECT_NEAR(static_cast<double>(table.b[k]), b, 1e-13 * b) << dist.describe() << " k=" << k;
  }
}

std::vector<PearsonDistribution> laws() {
  return {make_normal(0.0, 1.0), make_normal(1.0, 2.5),  make_gamma(2.0, 1.0),
          make_gamma(0.6, 2.0),  make_beta(2.0, 3.0),    make_beta(0.5, 1.5),
          canonicalize(0.5, -1.0, 0.0, 1.0)};
}

}  // namespace

TEST(Recurrence, MatchesChebyshevAlgorithmOnExactMoments) {
  constexpr int n = 10;
  expect_recurrence_matches(make_normal(0.0, 1.0), normal_moments(2 * n), n);
  expect_recurrence_matches(make_gamma(2.0, 1.0), gamma_moments(2, 1, 2 * n), n);
  expect_recurrence_matches(make_gamma(1.5, 2.0), gamma_moments(mpq_class(3, 2), 2, 2 * n), n);
  expect_recurrence_matches(make_beta(2.0, 3.0), beta_moments(2, 3, 2 * n), n);
  expect_recurrence_matches(make_beta(0.5, 0.5), beta_moments(mpq_class(1, 2), mpq_class(1, 2), 2 * n), n);
}

TEST(Orthonormality, ResidualsBelowTolerance) {
  for (const auto& d : laws()) {
    const auto rule = gauss_rule(d, 40);
    const auto table = recurrence(d, 8);
    for (int j = 0; j <= 8; ++j)
      for (int k = j; k <= 8; ++k) {
        const double e = expectation(rule, [&](double x) { return evaluate_phi(table, j, x) * evaluate_phi(table, k, x); });
        EXPECT_NEAR(e, j == k ? 1.0 : 0.0, 1e-8) << d.describe() << " j=" << j << " k=" << k;
      }
  }
}

TEST(Orthonormality, ResidualsAgainstIndependentQuadrature) {
  for (const auto& d : laws()) {
    const auto table = recurrence(d, 8);
    for (int k = 0; k <= 8; ++k) {
      const double e = vbtest::oracle_expectation(d, [&](double x) {
        const double p = evaluate_phi(table, k, x);
        return p * p;
      });
      EXPECT_NEAR(e, 1.0, 1e-8) << d.describe() << " k=" << k;
    }
  }
}

TEST(Classical, HermiteConformance) {
  const auto table = recurrence(make_normal(0.0, 1.0), 10);
  for (int k = 0; k <= 10; ++k)
    for (const double x : {-2.5, -0.3, 0.0, 1.1, 3.7}) {
      // He_k(x) = 2^{-k/2} H_k(x / sqrt 2)
      const double he = std::pow(2.0, -0.5 * k) * boost::math::hermite(k, x / std::sqrt(2.0));
      const double expected = he / std::sqrt(std::tgamma(k + 1.0));
      EXPECT_NEAR(evaluate_phi(table, k, x), expected, 1e-11 * std::max(1.0, std::abs(expected)));
    }
}

TEST(Classical, LaguerreConformance) {
  // Gamma(3, rate 1): phi_k = (-1)^k L_k^{(2)} / sqrt(C(k+2, k)).
  const auto table = recurrence(make_gamma(3.0, 1.0), 10);
  for (unsigned k = 0; k <= 10; ++k)
    for (const double x : {0.2, 1.0, 2.9, 6.5, 12.0}) {
      const double norm = std::sqrt(std::tgamma(k + 3.0) / (std::tgamma(k + 1.0) * 2.0));
      const double expected = (k % 2 ? -1.0 : 1.0) * boost::math::laguerre(k, 2u, x) / norm;
      EXPECT_NEAR(evaluate_phi(table, static_cast<int>(k), x), expected, 1e-10 * std::max(1.0, std::abs(expected)));
    }
}

TEST(Classical, JacobiConformance) {
  // Beta(a, b) on (0, 1) with t = 2x - 1: P_k^{(b-1, a-1)}(t).
  for (const auto [a, b] : {std::pair{2.0, 3.0}, std::pair{0.5, 1.5}, std::pair{4.0, 4.0}}) {
    const auto table = recurrence(make_beta(a, b), 10);
    const double al = b - 1.0, be = a - 1.0;
    for (unsigned k = 0; k <= 10; ++k) {
      const double log_norm = std::lgamma(k + al + 1) + std::lgamma(k + be + 1) - std::lgamma(k + al + be + 1) -
                              std::lgamma(k + 1.0) - std::log(2.0 * k + al + be + 1) -
                              (std::lgamma(al + 1) + std::lgamma(be + 1) - std::lgamma(al + be + 2));
      for (const double x : {0.05, 0.3, 0.5, 0.77, 0.96}) {
        const double expected = boost::math::jacobi(k, al, be, 2.0 * x - 1.0) / std::exp(0.5 * log_norm);
        EXPECT_NEAR(evaluate_phi(table, static_cast<int>(k), x), expected, 1e-10 * std::max(1.0, std::abs(expected)))
            << "a=" << a << " b=" << b << " k=" << k;
      }
    }
  }
}

TEST(RodriguesNorm, MatchesQuadratureOfLeadingScaledMonic) {
  for (const auto& d : laws()) {
    const auto table = recurrence(d, 8);
    for (int k = 0; k <= 8; ++k) {
      long double monic_norm = 1.0L;
      for (int j = 1; j <= k; ++j) monic_norm *= table.b[j];
      const double lead = rodrigues_leading(k, d.delta());
      const double via_quadrature = vbtest::oracle_expectation(d, [&](double x) {
        const double p = lead * std::sqrt(static_cast<double>(monic_norm)) * evaluate_phi(table, k, x);
        return p * p;
      });
      EXPECT_NEAR(rodrigues_norm(d, k), via_quadrature, 1e-7 * via_quadrature) << d.describe() << " k=" << k;
      EXPECT_NEAR(table.norms[k], rodrigues_norm(d, k), 1e-12 * table.norms[k]);
    }
  }
  EXPECT_DOUBLE_EQ(rodrigues_norm(make_normal(0.0, 1.0), 4), 24.0);
}

TEST(GaussRule, IsExactForPolynomialsUpToDegreeTwoKMinusOne) {
  const auto mu = beta_moments(2, 3, 40);
  for (const int K : {1, 2, 5, 12}) {
    const auto rule = gauss_rule(make_beta(2.0, 3.0), K);
    double total = 0.0;
    for (const double w : rule.weights) {
      EXPECT_GE(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    for (std::size_t j = 1; j < rule.size(); ++j) EXPECT_LT(rule.nodes[j - 1], rule.nodes[j]);
    for (int p = 0; p <= 2 * K - 1; ++p)
      EXPECT_NEAR(expectation(rule, [&](double x) { return std::pow(x, p); }), mu[p].get_d(), 1e-13) << K << ' ' << p;
  }
}

TEST(GaussRule, NodesStayInsideSupport) {
  for (const auto& d : laws()) {
    const auto rule = gauss_rule(d, 256);
    for (const double x : rule.nodes) EXPECT_TRUE(d.support().contains(x)) << d.describe() << " x=" << x;
  }
}

TEST(SteinIdentity, ResidualBelowTolerance) {
  for (const auto& c : vbtest::catalog()) {
    const auto g = parse(c.g);
    for (int k = 0; k <= 4; ++k) EXPECT_LT(stein_identity_check(c.dist, g, k), 1e-7) << c.name << " k=" << k;
  }
}

TEST(NuRelation, DerivativeOfPhiIsScaledDerivedPhi) {
  for (const auto& d : laws()) {
    for (int i = 1; i <= 3; ++i) {
      const auto di = derived_distribution(d, i);
      const auto rule = gauss_rule(di, 40);
      const auto table = recurrence(d, 10);
      const auto derived_table = recurrence(di, 6);
      for (int k = 0; k <= 6; ++k) {
        const auto dphi = phi_polynomial(table, k + i, d.mean()).derivative(i);
        const double nu = nu_coefficient(d, k, i);
        const double residual = expectation(rule, [&](double x) {
          const double diff = static_cast<double>(dphi(x)) - nu * evaluate_phi(derived_table, k, x);
          return diff * diff;
        });
        EXPECT_LT(std::sqrt(residual), 1e-6 * std::max(1.0, nu)) << d.describe() << " i=" << i << " k=" << k;
      }
    }
  }
}

TEST(PhiPolynomial, AgreesWithRecurrenceEvaluation) {
  for (const auto& d : laws()) {
    const auto table = recurrence(d, 8);
    for (int k = 0; k <= 8; ++k) {
      const auto p = phi_polynomial(table, k, d.mean());
      EXPECT_EQ(p.degree(), k);
      const auto mono = p.monomial_coefficients();
      for (const double u : {-0.7, 0.1, 0.9}) {
        const double x = d.mean() + u * std::sqrt(d.variance());
        if (!d.support().contains(x)) continue;
        const double expected = evaluate_phi(table, k, x);
        EXPECT_NEAR(static_cast<double>(p(x)), expected, 1e-10 * std::max(1.0, std::abs(expected)));
        long double horner = 0.0L;
        for (auto it = mono.rbegin(); it != mono.rend(); ++it) horner = horner * x + *it;
        EXPECT_NEAR(static_cast<double>(horner), expected, 1e-8 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST(Recurrence, RejectsDegreeBeyondTable) {
  const auto table = recurrence(make_normal(0.0, 1.0), 3);
  EXPECT_THROW(evaluate_phi(table, 4, 0.0), DegreeExceeded);
  EXPECT_THROW(phi_polynomial(table, 5, 0.0L), DegreeExceeded);
}

TEST(GaussRule, CsvHasHeaderAndOneRowPerNode) {
  std::ostringstream os;
  write_csv(os, gauss_rule(make_normal(0.0, 1.0), 3));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "node,weight");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
}
