#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

#include "test_support.hpp"
#include "varbound/errors.hpp"
#include "varbound/pearson.hpp"

using namespace varbound;

namespace {

std::vector<PearsonDistribution> laws() {
  return {make_normal(0.0, 1.0),
          make_normal(-1.5, 4.0),
          make_gamma(2.0, 1.0),
          make_gamma(0.7, 3.0),
          make_beta(2.0, 3.0),
          make_beta(0.5, 0.5),
          canonicalize(1.0, -0.25, 0.5, 2.0),
          canonicalize(-2.0, 0.0, -0.5, 1.0)};
}

// Interior point at quantile-ish position u in (0, 1).
double interior(const PearsonDistribution& d, double u) {
  const auto s = d.support();
  if (s.lower_bounded() && s.upper_bounded()) return s.lo + u * (s.hi - s.lo);
  const double sd = std::sqrt(d.variance());
  const double x = d.mean() + (u - 0.5) * 4.0 * sd;
  if (s.lower_bounded()) return std::max(x, s.lo + 0.05 * sd);
  if (s.upper_bounded()) return std::min(x, s.hi - 0.05 * sd);
  return x;
}

}  // namespace

TEST(Pearson, CanonicalizeRecognizesFamilies) {
  EXPECT_EQ(canonicalize(0.0, 0.0, 0.0, 1.0).family(), Family::Normal);
  const auto g = canonicalize(2.0, 0.0, 1.0, 0.0);
  EXPECT_EQ(g.family(), Family::Gamma);
  EXPECT_NEAR(std::get<GammaParams>(g.params()).alpha, 2.0, 1e-14);
  EXPECT_NEAR(std::get<GammaParams>(g.params()).theta, 1.0, 1e-14);
  const auto b = canonicalize(0.4, -0.2, 0.2, 0.0);
  EXPECT_EQ(b.family(), Family::Beta);
  EXPECT_NEAR(std::get<BetaParams>(b.params()).alpha, 2.0, 1e-12);
  EXPECT_NEAR(std::get<BetaParams>(b.params()).beta, 3.0, 1e-12);
  EXPECT_NEAR(b.support().lo, 0.0, 1e-14);
  EXPECT_NEAR(b.support().hi, 1.0, 1e-14);
}

TEST(Pearson, CanonicalizeRejectsOutsideFamily) {
  EXPECT_THROW(canonicalize(0.0, 0.5, 0.0, 1.0), RejectPositiveDelta);
  EXPECT_THROW(canonicalize(0.0, 0.0, 0.0, 0.0), RejectDegenerate);
  EXPECT_THROW(canonicalize(0.0, 0.0, 0.0, -1.0), RejectDegenerate);
  EXPECT_THROW(canonicalize(0.0, -1.0, 0.0, -1.0), RejectDegenerate);
  EXPECT_THROW(canonicalize(5.0, -0.2, 0.2, 0.0), RejectDegenerate);
  EXPECT_THROW(canonicalize(0.0, 0.0, 1.0, 0.0), RejectDegenerate);
}

TEST(Pearson, CanonicalizeRoundTripsQuadratic) {
  for (const auto& d : laws()) {
    const auto back = canonicalize(d.mean(), d.delta(), d.q().beta, d.q().gamma);
    EXPECT_EQ(back.family(), d.family());
    EXPECT_NEAR(back.mean(), d.mean(), 1e-12);
    EXPECT_NEAR(back.q().beta, d.q().beta, 1e-12);
    EXPECT_NEAR(back.q().gamma, d.q().gamma, 1e-12);
    EXPECT_NEAR(back.variance(), d.variance(), 1e-12 * d.variance());
  }
}

TEST(Pearson, DensityAgreesWithBoostAndIntegratesToOne) {
  for (const auto& d : laws()) {
    EXPECT_NEAR(vbtest::oracle_expectation(d, [](double) { return 1.0; }), 1.0, 1e-10) << d.describe();
    const double mean = vbtest::oracle_expectation(d, [](double x) { return x; });
    EXPECT_NEAR(mean, d.mean(), 1e-9 * std::max(1.0, std::abs(d.mean()))) << d.describe();
    const double var = vbtest::oracle_expectation(d, [&](double x) { return (x - d.mean()) * (x - d.mean()); });
    EXPECT_NEAR(var, d.variance(), 1e-9 * d.variance()) << d.describe();
  }
}

TEST(Pearson, IntegratedPearsonIdentity) {
  // int_{-inf}^x (mu - t) f(t) dt = q(x) f(x); integrated from the finite end
  // of the support, or over [x, inf) with the sign flipped.
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> half;
  for (const auto& d : laws()) {
    const auto s = d.support();
    auto integrand = [&](double t) { return s.contains(t) ? (d.mean() - t) * density(d, t) : 0.0; };
    for (const double u : {0.15, 0.4, 0.6, 0.85}) {
      const double x = interior(d, u);
      double lhs;
      if (s.lower_bounded()) {
        lhs = finite.integrate(integrand, s.lo, x);
      } else if (s.upper_bounded()) {
        lhs = -finite.integrate(integrand, x, s.hi);
      } else {
        lhs = -half.integrate(integrand, x, std::numeric_limits<double>::infinity());
      }
      const double rhs = d.q()(x) * density(d, x);
      EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs))) << d.describe() << " x=" << x;
    }
  }
}

TEST(Pearson, QPowerMomentsMatchQuadrature) {
  for (const auto& d : laws()) {
    for (int i = 0; i <= 5; ++i) {
      const double oracle = vbtest::oracle_expectation(d, [&](double x) { return std::pow(d.q()(x), i); });
      EXPECT_NEAR(moment_q_power(d, i), oracle, 1e-9 * std::abs(oracle)) << d.describe() << " i=" << i;
    }
  }
}

TEST(Pearson, DerivedDistributionHasDensityProportionalToQPowerF) {
  for (const auto& d : laws()) {
    for (int i = 1; i <= 3; ++i) {
      const auto di = derived_distribution(d, i);
      EXPECT_NEAR(di.mean(), (d.mean() + i * d.q().beta) / (1.0 - 2 * i * d.delta()),
                  1e-12 * std::max(1.0, std::abs(di.mean())))
          << d.describe();
      const double x0 = interior(d, 0.5);
      const double ratio0 = density(di, x0) / (std::pow(d.q()(x0), i) * density(d, x0));
      for (const double u : {0.2, 0.35, 0.8}) {
        const double x = interior(d, u);
        const double ratio = density(di, x) / (std::pow(d.q()(x), i) * density(d, x));
        EXPECT_NEAR(ratio, ratio0, 1e-10 * ratio0) << d.describe() << " i=" << i;
      }
      EXPECT_NEAR(ratio0, 1.0 / moment_q_power(d, i), 1e-10 * ratio0);
    }
  }
}

TEST(Pearson, DensityOutsideSupportThrows) {
  EXPECT_THROW(density(make_beta(2.0, 3.0), 1.5), OutOfSupport);
  EXPECT_THROW(density(make_gamma(2.0, 1.0), -0.1), OutOfSupport);
  EXPECT_NO_THROW(density(make_normal(0.0, 1.0), 30.0));
}

TEST(Pearson, MomentsExistForNonPositiveDelta) {
  EXPECT_TRUE(moment_exists(0.0, 50.0));
  EXPECT_TRUE(moment_exists(-0.5, 50.0));
  EXPECT_FALSE(moment_exists(0.5, 3.0));
  EXPECT_TRUE(moment_exists(0.25, 3.0));
}

TEST(DistributionLiteral, ParsesAllForms) {
  const auto n = parse_distribution("normal:mu=0,sigma2=1");
  EXPECT_EQ(n.family(), Family::Normal);
  EXPECT_DOUBLE_EQ(n.variance(), 1.0);
  const auto g = parse_distribution("gamma:alpha=2,theta=1/2");
  EXPECT_EQ(g.family(), Family::Gamma);
  EXPECT_DOUBLE_EQ(g.mean(), 4.0);
  const auto b = parse_distribution("beta:alpha=2,beta=3");
  EXPECT_NEAR(b.mean(), 0.4, 1e-15);
  EXPECT_NEAR(b.delta(), -0.2, 1e-15);
  const auto p = parse_distribution("pearson:mu=0.4,delta=-1/5,beta=1/5,gamma=0");
  EXPECT_EQ(p.family(), Family::Beta);
}

TEST(DistributionLiteral, RejectsMalformedInput) {
  for (const char* bad : {"normal", "normal:mu=0", "normal:mu=0,sigma2=1,sigma2=2", "normal:mu=zero,sigma2=1",
                          "cauchy:mu=0", "gamma:alpha=-1,theta=1", "beta:alpha=1,beta=1/0", "normal:mu=0,s=1"})
    EXPECT_THROW(parse_distribution(bad), Error) << bad;
  EXPECT_THROW(parse_distribution("pearson:mu=0,delta=1,beta=0,gamma=1"), RejectPositiveDelta);
}

TEST(Pearson, UnboundedEndpointFlag) {
  EXPECT_FALSE(unbounded_at_endpoint(make_normal(0.0, 1.0)));
  EXPECT_FALSE(unbounded_at_endpoint(make_gamma(1.0, 2.0)));
  EXPECT_TRUE(unbounded_at_endpoint(make_gamma(0.5, 2.0)));
  EXPECT_FALSE(unbounded_at_endpoint(make_beta(2.0, 3.0)));
  EXPECT_TRUE(unbounded_at_endpoint(make_beta(2.0, 0.5)));
  EXPECT_TRUE(unbounded_at_endpoint(parse_distribution("beta:alpha=1/2,beta=1/2")));
}
