#include "varbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varbound/coefficients.hpp"
#include "varbound/combinatorics.hpp"
#include "varbound/errors.hpp"
#include "varbound/orthopoly.hpp"

namespace varbound {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t at(int i) { return static_cast<std::size_t>(i); }

long double log_one_minus_jdelta(int lo, int hi, long double delta) {
  long double s = 0.0L;
  for (int j = lo; j <= hi; ++j) s += std::log1p(-j * delta);
  return s;
}

long double log_falling(int x, int k) { return std::lgamma(static_cast<long double>(x) + 1) - std::lgamma(static_cast<long double>(x - k) + 1); }

long double log_binomial(int n, int k) { return log_falling(n, k) - std::lgamma(static_cast<long double>(k) + 1); }

void require_order(const DerivativeMoments& moments, int order) {
  if (moments.order < order)
    throw std::invalid_argument("derivative moments computed to order " + std::to_string(moments.order) +
                                ", need " + std::to_string(order));
}

std::string with_endpoint_note(const PearsonDistribution& dist, std::string diagnostic) {
  if (!unbounded_at_endpoint(dist)) return diagnostic;
  if (!diagnostic.empty()) diagnostic += "; ";
  return diagnostic + "density unbounded at a support endpoint, quadrature accuracy depends on g there";
}

BoundReport trivial_report(int m, int n, const TheoremCoefficients& coeffs, std::string diagnostic) {
  BoundReport r;
  r.m = m;
  r.n = n;
  r.verdict = Verdict::TrivialBound;
  r.value = n % 2 == 1 ? kInf : -kInf;
  r.variance = kNaN;
  r.residual = kNaN;
  r.sign_ok = false;
  r.equality = false;
  r.a = coeffs.a;
  r.b = coeffs.b;
  r.lambda = coeffs.lambda;
  r.diagnostic = std::move(diagnostic);
  return r;
}

bool any_divergent(const MembershipReport& report) {
  const auto bad = [](bool finite) { return !finite; };
  return std::any_of(report.finite_quadratic.begin(), report.finite_quadratic.end(), bad) ||
         std::any_of(report.finite_linear.begin(), report.finite_linear.end(), bad);
}

}  // namespace

DerivativeMoments derivative_moments(const PearsonDistribution& dist, const Expr& g, int order,
                                     const EvalOptions& options) {
  if (order < 0) throw std::invalid_argument("derivative_moments: order must be >= 0");
  const QuadratureRule rule = gauss_rule(dist, options.quad_size);
  const Quadratic& q = dist.q();

  DerivativeMoments out;
  out.order = order;
  out.delta = dist.delta();
  Expr gi = g;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) gi = differentiate(gi, 1);
    const double lin = expectation(rule, [&](double x) { return std::pow(q(x), i) * gi.evaluate(x); },
                                   options.accumulation);
    const double quad = expectation(
        rule,
        [&](double x) {
          const double v = gi.evaluate(x);
          return std::pow(q(x), i) * v * v;
        },
        options.accumulation);
    if (!std::isfinite(lin) || !std::isfinite(quad))
      throw DivergentExpectation("E q^" + std::to_string(i) + " g^(" + std::to_string(i) + ") is not finite");
    out.linear.push_back(lin);
    out.quadratic.push_back(quad);
    out.q_moments.push_back(moment_q_power(dist, i));
  }
  out.mean = out.linear[0];
  const double mean = out.mean;
  out.variance = expectation(
      rule,
      [&](double x) {
        const double v = g.evaluate(x) - mean;
        return v * v;
      },
      options.accumulation);
  return out;
}

TheoremCoefficients theorem_coefficients(int m, int n, double delta, const std::vector<double>& q_moments) {
  return theorem_coefficients(m, n, delta, q_moments, m + n > kLogSpaceThreshold);
}

TheoremCoefficients theorem_coefficients(int m, int n, double delta, const std::vector<double>& q_moments,
                                         bool log_space) {
  if (m < 0 || n < 0) throw std::invalid_argument("theorem_coefficients: m, n must be >= 0");
  if (delta > 0.0) throw RejectPositiveDelta("theorem coefficients need delta <= 0");
  if (static_cast<int>(q_moments.size()) <= m) throw std::invalid_argument("theorem_coefficients: need E q^i for i <= m");
  const long double d = delta;
  TheoremCoefficients out;

  for (int i = 1; i <= m; ++i) {
    long double v;
    if (log_space) {
      const long double lg = log_binomial(m, i) + log_one_minus_jdelta(m + i, m + n + i - 1, d) -
                             log_falling(m + n, i) - std::log(static_cast<long double>(q_moments[at(i)])) -
                             log_one_minus_jdelta(i - 1, 2 * i - 2, d) - log_one_minus_jdelta(m, m + n - 1, d);
      v = std::exp(lg);
    } else {
      v = binomial<long double>(m, i) * one_minus_jdelta<long double>(m + i, m + n + i - 1, d) /
          (falling<long double>(m + n, i) * q_moments[at(i)] * one_minus_jdelta<long double>(i - 1, 2 * i - 2, d) *
           one_minus_jdelta<long double>(m, m + n - 1, d));
    }
    out.a.push_back(static_cast<double>(v));
  }
  for (int i = 1; i <= n; ++i) {
    long double v;
    if (log_space) {
      v = std::exp(log_binomial(n, i) - log_falling(m + n, i) - log_one_minus_jdelta(m, m + i - 1, d));
    } else {
      v = binomial<long double>(n, i) /
          (falling<long double>(m + n, i) * one_minus_jdelta<long double>(m, m + i - 1, d));
    }
    out.b.push_back(static_cast<double>(v));
    out.lambda.push_back(static_cast<double>((i - 1) % 2 == 0 ? v : -v));
  }
  return out;
}

BoundReport bound_from_moments(const DerivativeMoments& moments, int m, int n, double tol) {
  if (n < 1) throw std::invalid_argument("bound_from_moments: n must be >= 1");
  require_order(moments, std::max(m, n));
  const TheoremCoefficients coeffs = theorem_coefficients(m, n, moments.delta, moments.q_moments);

  long double s = 0.0L;
  for (int i = 1; i <= m; ++i) {
    const long double lin = moments.linear[at(i)];
    s += static_cast<long double>(coeffs.a[at(i - 1)]) * lin * lin;
  }
  for (int i = 1; i <= n; ++i) s += static_cast<long double>(coeffs.lambda[at(i - 1)]) * moments.quadratic[at(i)];

  BoundReport r;
  r.m = m;
  r.n = n;
  r.verdict = Verdict::Member;
  r.value = static_cast<double>(s);
  r.variance = moments.variance;
  r.scale = std::max(1.0, moments.variance);
  const double diff = moments.variance - r.value;
  r.residual = n % 2 == 0 ? diff : -diff;
  r.sign_ok = r.residual >= -tol * r.scale;
  r.equality = std::abs(r.residual) <= tol * r.scale;
  r.a = coeffs.a;
  r.b = coeffs.b;
  r.lambda = coeffs.lambda;
  return r;
}

Verdict verdict_for(const MembershipReport& report, int m, int n) {
  for (int i = 0; i <= n && i < static_cast<int>(report.finite_quadratic.size()); ++i)
    if (!report.finite_quadratic[at(i)]) return Verdict::TrivialBound;
  for (int i = 0; i <= std::max(m, n) && i < static_cast<int>(report.finite_linear.size()); ++i)
    if (!report.finite_linear[at(i)]) return Verdict::TrivialBound;
  return report.verdict == Verdict::Unknown ? Verdict::Unknown : Verdict::Member;
}

BoundReport bound_smn(const PearsonDistribution& dist, const Expr& g, int m, int n, const EvalOptions& options) {
  if (n < 1 || m < 0) throw std::invalid_argument("bound_smn: need m >= 0 and n >= 1");
  const MembershipReport membership = check_membership(dist, g, m, n, options);
  if (membership.verdict == Verdict::TrivialBound) {
    const TheoremCoefficients coeffs = theorem_coefficients(m, n, dist.delta(), [&] {
      std::vector<double> qm;
      for (int i = 0; i <= m; ++i) qm.push_back(moment_q_power(dist, i));
      return qm;
    }());
    return trivial_report(m, n, coeffs, membership.diagnostic);
  }
  const DerivativeMoments moments = derivative_moments(dist, g, std::max(m, n), options);
  BoundReport r = bound_from_moments(moments, m, n, options.tol);
  r.verdict = membership.verdict;
  r.diagnostic = with_endpoint_note(dist, membership.diagnostic);
  return r;
}

std::vector<BoundReport> sweep(const PearsonDistribution& dist, const Expr& g, int n, int m_max,
                               const EvalOptions& options) {
  if (n < 1 || m_max < 0) throw std::invalid_argument("sweep: need n >= 1 and m_max >= 0");
  const MembershipReport membership = check_membership(dist, g, m_max, n, options);
  std::vector<BoundReport> rows;
  if (any_divergent(membership)) {
    // Rows whose own conditions fail are trivial; moments are unusable.
    for (int m = 0; m <= m_max; ++m) {
      std::vector<double> qm;
      for (int i = 0; i <= m; ++i) qm.push_back(moment_q_power(dist, i));
      rows.push_back(trivial_report(m, n, theorem_coefficients(m, n, dist.delta(), qm), membership.diagnostic));
    }
    return rows;
  }
  const DerivativeMoments moments = derivative_moments(dist, g, std::max(m_max, n), options);
  for (int m = 0; m <= m_max; ++m) {
    BoundReport r = bound_from_moments(moments, m, n, options.tol);
    r.verdict = verdict_for(membership, m, n);
    r.diagnostic = with_endpoint_note(dist, membership.diagnostic);
    rows.push_back(std::move(r));
  }
  return rows;
}

double legacy_sn(const DerivativeMoments& moments, int n) {
  require_order(moments, n);
  const long double d = moments.delta;
  long double s = 0.0L;
  for (int k = 1; k <= n; ++k) {
    const long double term =
        moments.quadratic[at(k)] / (factorial<long double>(k) * one_minus_jdelta<long double>(0, k - 1, d));
    s += (k - 1) % 2 == 0 ? term : -term;
  }
  return static_cast<double>(s);
}

double legacy_bessel(const DerivativeMoments& moments, int n) {
  require_order(moments, n);
  const long double d = moments.delta;
  long double s = 0.0L;
  for (int k = 1; k <= n; ++k) {
    const long double lin = moments.linear[at(k)];
    s += lin * lin /
         (factorial<long double>(k) * moments.q_moments[at(k)] * one_minus_jdelta<long double>(k - 1, 2 * k - 2, d));
  }
  return static_cast<double>(s);
}

double legacy_strong(const DerivativeMoments& moments, int n) {
  if (n < 1) throw std::invalid_argument("legacy_strong: n must be >= 1");
  require_order(moments, n);
  const long double d = moments.delta;
  const long double lin = moments.linear[at(n)];
  const long double tail = (moments.quadratic[at(n)] - lin * lin / moments.q_moments[at(n)]) /
                           (factorial<long double>(n + 1) * one_minus_jdelta<long double>(n, 2 * n - 1, d));
  return static_cast<double>(legacy_bessel(moments, n) + tail);
}

double legacy_weak(const DerivativeMoments& moments, int n) {
  if (n < 1) throw std::invalid_argument("legacy_weak: n must be >= 1");
  require_order(moments, n);
  const long double d = moments.delta;
  const long double tail =
      moments.quadratic[at(n)] / (factorial<long double>(n) * one_minus_jdelta<long double>(n - 1, 2 * n - 2, d));
  return static_cast<double>(legacy_bessel(moments, n - 1) + tail);
}

namespace {

DerivativeMoments legacy_moments(const PearsonDistribution& dist, const Expr& g, int m, int n, int sign,
                                 const EvalOptions& options) {
  const MembershipReport membership = check_membership(dist, g, m, n, options);
  if (any_divergent(membership)) throw TrivialBound("bound is trivial: " + membership.diagnostic, sign);
  return derivative_moments(dist, g, std::max(m, n), options);
}

int odd_sign(int n) { return n % 2 == 1 ? 1 : -1; }

}  // namespace

double bound_legacy_sn(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options) {
  return legacy_sn(legacy_moments(dist, g, 0, n, odd_sign(n), options), n);
}

double bound_bessel(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options) {
  return legacy_bessel(legacy_moments(dist, g, n, 0, -1, options), n);
}

double bound_str(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options) {
  return legacy_strong(legacy_moments(dist, g, n, n, 1, options), n);
}

double bound_weak(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options) {
  return legacy_weak(legacy_moments(dist, g, n, n, 1, options), n);
}

double residual_cap(const DerivativeMoments& moments, int m, int n, int tau) {
  require_order(moments, tau);
  return cap_coefficient<double>(m, n, tau, moments.delta) * moments.quadratic[at(tau)];
}

double residual_cap(const PearsonDistribution& dist, const Expr& g, int m, int n, int tau,
                    const EvalOptions& options) {
  if (tau < n || tau > m + n + 1) throw std::invalid_argument("residual_cap: tau must lie in [n, m+n+1]");
  const MembershipReport membership = check_membership(dist, g, tau, tau, options);
  if (any_divergent(membership))
    throw MembershipFailure("g is not in H^{tau,tau} for tau = " + std::to_string(tau) + ": " + membership.diagnostic);
  return residual_cap(derivative_moments(dist, g, tau, options), m, n, tau);
}

FourierSpectrum fourier_coefficients(const PearsonDistribution& dist, const Expr& g, int K,
                                     const EvalOptions& options) {
  if (K < 1) throw std::invalid_argument("fourier_coefficients: K must be >= 1");
  const int size = std::max(options.quad_size, 2 * K + 64);
  const QuadratureRule rule = gauss_rule(dist, size);
  const RecurrenceTable table = recurrence(dist, K);

  std::vector<long double> acc(at(K) + 1, 0.0L);
  long double mean = 0.0L;
  std::vector<double> values(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    if (rule.weights[j] == 0.0) continue;
    const double gx = g.evaluate(rule.nodes[j]);
    values[j] = gx;
    const auto phi = evaluate_phis(table, rule.nodes[j]);
    const long double wg = static_cast<long double>(rule.weights[j]) * gx;
    for (std::size_t k = 0; k <= at(K); ++k) acc[k] += wg * phi[k];
    mean += wg;
  }
  long double var = 0.0L;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    if (rule.weights[j] == 0.0) continue;
    const long double v = values[j] - mean;
    var += rule.weights[j] * v * v;
  }
  FourierSpectrum out;
  out.truncation = K;
  long double parseval = 0.0L;
  for (std::size_t k = 0; k <= at(K); ++k) {
    out.c.push_back(static_cast<double>(acc[k]));
    if (k >= 1) parseval += acc[k] * acc[k];
  }
  if (!std::isfinite(static_cast<double>(var))) throw DivergentExpectation("Var g(X) is not finite");
  out.tail_estimate = static_cast<double>(std::abs(var - parseval));
  return out;
}

int adaptive_truncation(const PearsonDistribution& dist, const Expr& g, int K0, const EvalOptions& options) {
  if (K0 < 1) throw std::invalid_argument("adaptive_truncation: K0 must be >= 1");
  int K = std::min(K0, kMaxTruncation);
  for (;;) {
    const FourierSpectrum spectrum = fourier_coefficients(dist, g, K, options);
    long double var = 0.0L;
    for (std::size_t k = 1; k < spectrum.c.size(); ++k) var += static_cast<long double>(spectrum.c[k]) * spectrum.c[k];
    const double scale = std::max(1.0, static_cast<double>(var) + spectrum.tail_estimate);
    if (spectrum.tail_estimate <= 1e-14 * scale || K >= kMaxTruncation) return K;
    K = std::min(2 * K, kMaxTruncation);
  }
}

double variance(const PearsonDistribution& dist, const Expr& g, const EvalOptions& options) {
  const auto probe = probe_expectation(dist, probe_rules(dist), g, 0, true, options.accumulation);
  if (probe.outcome == ProbeOutcome::Divergent) throw DivergentExpectation("E g(X)^2 diverges");
  return derivative_moments(dist, g, 0, options).variance;
}

std::vector<SpectralComparison> spectral_equivalence(const PearsonDistribution& dist, const Expr& g, int max_i,
                                                     int K, const EvalOptions& options) {
  if (max_i < 1 || K < max_i) throw std::invalid_argument("spectral_equivalence: need 1 <= max_i <= K");
  const DerivativeMoments moments = derivative_moments(dist, g, max_i, options);
  const FourierSpectrum spectrum = fourier_coefficients(dist, g, K, options);
  const double d = dist.delta();
  std::vector<SpectralComparison> out;
  for (int i = 1; i <= max_i; ++i) {
    SpectralComparison row;
    row.i = i;
    row.direct_quadratic = moments.quadratic[at(i)];
    row.direct_linear = moments.linear[at(i)];
    long double s = 0.0L;
    for (int k = i; k <= K; ++k) {
      const long double c = spectrum.c[at(k)];
      s += spectral_weight<long double>(k, i, d) * c * c;
    }
    row.spectral_quadratic = static_cast<double>(s);
    row.spectral_linear = std::sqrt(rodrigues_norm(dist, i)) * spectrum.c[at(i)];
    row.tolerance = std::max(1e-7, spectrum.tail_estimate);
    row.ok = std::abs(row.direct_quadratic - row.spectral_quadratic) <= row.tolerance &&
             std::abs(row.direct_linear - row.spectral_linear) <= row.tolerance;
    out.push_back(row);
  }
  return out;
}

ComparisonTable compare_from_moments(const DerivativeMoments& moments, int n, int m_max, double tol) {
  if (n < 1 || m_max < 0) throw std::invalid_argument("compare: need n >= 1 and m_max >= 0");
  require_order(moments, std::max(m_max, n));
  ComparisonTable t;
  t.n = n;
  t.m_max = m_max;
  t.variance = moments.variance;
  t.scale = std::max(1.0, moments.variance);
  const double slack_tol = tol * t.scale;
  bool ok = true;

  for (int m = 0; m <= m_max; ++m) t.sweep.push_back(bound_from_moments(moments, m, n, tol));
  for (int m1 = 0; m1 <= m_max; ++m1) {
    for (int m2 = m1 + 1; m2 <= m_max; ++m2) {
      GapRow row;
      row.m1 = m1;
      row.m2 = m2;
      row.gap1 = std::abs(t.variance - t.sweep[at(m1)].value);
      row.gap2 = std::abs(t.variance - t.sweep[at(m2)].value);
      row.zeta = zeta<double>(m1, m2, n, moments.delta);
      row.slack = row.gap1 - row.zeta * row.gap2;
      row.ok = row.slack >= -slack_tol;
      ok = ok && row.ok;
      t.gaps.push_back(row);
    }
  }

  const BoundReport snn = bound_from_moments(moments, n, n, tol);
  t.corollary.n = n;
  t.corollary.gap_legacy = std::abs(t.variance - legacy_sn(moments, n));
  t.corollary.gap_new = std::abs(t.variance - snn.value);
  t.corollary.factor = corollary_factor<double>(n, moments.delta);
  t.corollary.slack = t.corollary.gap_legacy - t.corollary.factor * t.corollary.gap_new;
  t.corollary.ok = t.corollary.slack >= -slack_tol;

  t.chernoff.n = n;
  t.chernoff.s_n1 = bound_from_moments(moments, n, 1, tol).value;
  t.chernoff.s_str = legacy_strong(moments, n);
  t.chernoff.s_nm1_1 = bound_from_moments(moments, n - 1, 1, tol).value;
  t.chernoff.s_weak = legacy_weak(moments, n);
  t.chernoff.ok_str = t.chernoff.s_n1 <= t.chernoff.s_str + slack_tol;
  t.chernoff.ok_weak = t.chernoff.s_nm1_1 <= t.chernoff.s_weak + slack_tol;

  for (const auto& r : t.sweep) ok = ok && r.sign_ok;
  t.all_ok = ok && t.corollary.ok && t.chernoff.ok_str && t.chernoff.ok_weak;
  return t;
}

ComparisonTable compare_suite(const PearsonDistribution& dist, const Expr& g, int n, int m_max,
                              const EvalOptions& options) {
  if (n < 1 || m_max < 0) throw std::invalid_argument("compare_suite: need n >= 1 and m_max >= 0");
  const int order = std::max(m_max, n);
  const MembershipReport membership = check_membership(dist, g, order, n, options);
  if (any_divergent(membership)) throw TrivialBound("bound is trivial: " + membership.diagnostic, odd_sign(n));
  return compare_from_moments(derivative_moments(dist, g, order, options), n, m_max, options.tol);
}

}  // namespace varbound
