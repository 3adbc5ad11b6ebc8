#include "varbound/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "varbound/combinatorics.hpp"
#include "varbound/coefficients.hpp"
#include "varbound/errors.hpp"

namespace varbound {

long double Polynomial::operator()(long double x) const {
  const long double t = x - center;
  long double acc = 0.0L;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  Polynomial out{center, coeffs};
  for (int r = 0; r < order; ++r) {
    if (out.coeffs.size() <= 1) {
      out.coeffs.assign(1, 0.0L);
      continue;
    }
    std::vector<long double> next(out.coeffs.size() - 1);
    for (std::size_t j = 1; j < out.coeffs.size(); ++j) next[j - 1] = static_cast<long double>(j) * out.coeffs[j];
    out.coeffs = std::move(next);
  }
  return out;
}

std::vector<long double> Polynomial::monomial_coefficients() const {
  // sum_j c_j (x - center)^j, expanded by the binomial theorem.
  std::vector<long double> out(coeffs.size(), 0.0L);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    long double binom = 1.0L;
    long double shift_pow = 1.0L;  // (-center)^{j-r}
    for (std::size_t r = j + 1; r-- > 0;) {
      out[r] += coeffs[j] * binom * shift_pow;
      binom = binom * static_cast<long double>(r) / static_cast<long double>(j - r + 1);
      shift_pow *= -center;
    }
  }
  return out;
}

RecurrenceTable recurrence(const PearsonDistribution& dist, int K) {
  if (K < 1) throw std::invalid_argument("recurrence: K must be >= 1");
  const long double mu = dist.mean();
  const long double d = dist.q().delta;
  const long double beta = dist.q().beta;
  const auto q = [&](long double x) { return dist.q()(x); };

  // Coefficient of x^{k-1} in the monic p_k.
  const auto sub_leading = [&](int k) -> long double {
    if (k == 0) return 0.0L;
    return -static_cast<long double>(k) * (beta * (k - 1) + mu) / (1.0L - 2.0L * d * (k - 1));
  };

  RecurrenceTable t;
  t.degree_cap = K;
  t.delta = dist.delta();
  t.a.resize(static_cast<std::size_t>(K) + 1);
  t.b.resize(static_cast<std::size_t>(K) + 1);
  t.norms.resize(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) t.a[static_cast<std::size_t>(k)] = sub_leading(k) - sub_leading(k + 1);

  t.b[0] = 1.0L;
  t.b[1] = q(mu) / (1.0L - d);
  for (int k = 2; k <= K; ++k) {
    const long double mu_prev = (mu + (k - 1) * beta) / (1.0L - 2.0L * (k - 1) * d);
    t.b[static_cast<std::size_t>(k)] = k * q(mu_prev) * (1.0L - (k - 2) * d) /
                                       ((1.0L - (2 * k - 1) * d) * (1.0L - (2 * k - 3) * d));
  }
  for (int k = 1; k <= K; ++k) {
    const long double bk = t.b[static_cast<std::size_t>(k)];
    if (!(bk > 0.0L) || !std::isfinite(bk))
      throw NumericalBreakdown("recurrence coefficient b_" + std::to_string(k) + " is not positive");
  }
  for (int k = 0; k <= K; ++k) t.norms[static_cast<std::size_t>(k)] = rodrigues_norm(dist, k);
  return t;
}

std::vector<long double> evaluate_phis(const RecurrenceTable& table, long double x) {
  const auto K = static_cast<std::size_t>(table.degree_cap);
  std::vector<long double> phi(K + 1);
  phi[0] = 1.0L;
  if (K == 0) return phi;
  phi[1] = (x - table.a[0]) / std::sqrt(table.b[1]);
  for (std::size_t k = 1; k < K; ++k)
    phi[k + 1] = ((x - table.a[k]) * phi[k] - std::sqrt(table.b[k]) * phi[k - 1]) / std::sqrt(table.b[k + 1]);
  return phi;
}

double evaluate_phi(const RecurrenceTable& table, int k, double x) {
  if (k < 0 || k > table.degree_cap) throw DegreeExceeded("phi_" + std::to_string(k) + " exceeds the table degree");
  long double prev = 0.0L;
  long double cur = 1.0L;
  for (int j = 0; j < k; ++j) {
    const auto J = static_cast<std::size_t>(j);
    const long double next = ((x - table.a[J]) * cur - std::sqrt(table.b[J]) * prev) / std::sqrt(table.b[J + 1]);
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

Polynomial phi_polynomial(const RecurrenceTable& table, int k, long double center) {
  if (k < 0 || k > table.degree_cap) throw DegreeExceeded("phi_" + std::to_string(k) + " exceeds the table degree");
  std::vector<long double> prev;      // phi_{-1} = 0
  std::vector<long double> cur{1.0L};  // phi_0
  for (int j = 0; j < k; ++j) {
    const auto J = static_cast<std::size_t>(j);
    const long double shift = center - table.a[J];
    const long double sb = std::sqrt(table.b[J]);
    const long double sb_next = std::sqrt(table.b[J + 1]);
    std::vector<long double> next(cur.size() + 1, 0.0L);
    for (std::size_t r = 0; r < cur.size(); ++r) {
      next[r + 1] += cur[r];        // t * phi_j
      next[r] += shift * cur[r];
    }
    for (std::size_t r = 0; r < prev.size(); ++r) next[r] -= sb * prev[r];
    for (auto& c : next) c /= sb_next;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial{center, std::move(cur)};
}

double rodrigues_norm(const PearsonDistribution& dist, int k) {
  if (k < 0) throw std::invalid_argument("rodrigues_norm: k must be >= 0");
  const long double d = dist.delta();
  return static_cast<double>(factorial<long double>(k) * static_cast<long double>(moment_q_power(dist, k)) *
                             one_minus_jdelta<long double>(k - 1, 2 * k - 2, d));
}

QuadratureRule gauss_rule(const PearsonDistribution& dist, int K) {
  if (K < 1) throw std::invalid_argument("gauss_rule: K must be >= 1");
  const RecurrenceTable table = recurrence(dist, K);
  const auto n = static_cast<std::size_t>(K);
  std::vector<long double> diag(table.a.begin(), table.a.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<long double> off(n, 0.0L);
  for (std::size_t k = 1; k < n; ++k) off[k - 1] = std::sqrt(table.b[k]);
  const std::vector<long double> nodes = tridiagonal_eigenvalues(std::move(diag), std::move(off));

  // Christoffel weights 1 / sum_{k<K} phi_k(x)^2; long double has the exponent
  // range to hold the sums for the rule sizes used here.
  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  const Support& sup = dist.support();
  for (const long double x : nodes) {
    long double prev = 0.0L;
    long double cur = 1.0L;
    long double sum = 1.0L;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const long double next = ((x - table.a[k]) * cur - std::sqrt(table.b[k]) * prev) / std::sqrt(table.b[k + 1]);
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    if (!std::isfinite(sum)) throw NumericalBreakdown("Christoffel sum overflow in gauss_rule");
    double node = static_cast<double>(x);
    // Clamp round-off excursions onto the open support.
    if (sup.lower_bounded() && !(node > sup.lo)) node = std::nextafter(sup.lo, sup.hi);
    if (sup.upper_bounded() && !(node < sup.hi)) node = std::nextafter(sup.hi, sup.lo);
    rule.nodes.push_back(node);
    rule.weights.push_back(static_cast<double>(1.0L / sum));
  }
  return rule;
}

double nu_coefficient(const PearsonDistribution& dist, int k, int i) {
  if (k < 0 || i < 0) throw std::invalid_argument("nu_coefficient: k and i must be >= 0");
  const long double d = dist.delta();
  const long double num = falling<long double>(k + i, i) * one_minus_jdelta<long double>(k + i - 1, k + 2 * i - 2, d);
  return static_cast<double>(std::sqrt(num / static_cast<long double>(moment_q_power(dist, i))));
}

double stein_identity_check(const PearsonDistribution& dist, const Expr& g, int k, const EvalOptions& options) {
  if (k < 0) throw std::invalid_argument("stein_identity_check: k must be >= 0");
  const int n = std::max(options.quad_size, k + 1);
  const QuadratureRule rule = gauss_rule(dist, n);
  const RecurrenceTable table = recurrence(dist, std::max(k, 1));
  const double scale = std::sqrt(table.norms[static_cast<std::size_t>(k)]);
  const Expr gk = differentiate(g, k);
  const Quadratic& q = dist.q();

  const double lhs = expectation(
      rule, [&](double x) { return scale * evaluate_phi(table, k, x) * g.evaluate(x); }, options.accumulation);
  const double rhs = expectation(
      rule, [&](double x) { return std::pow(q(x), k) * gk.evaluate(x); }, options.accumulation);
  if (!std::isfinite(lhs) || !std::isfinite(rhs))
    throw DivergentExpectation("Stein identity expectations are not finite");
  return std::abs(lhs - rhs);
}

void write_csv(std::ostream& os, const QuadratureRule& rule) {
  const auto old = os.precision(17);
  os << "node,weight\n";
  for (std::size_t j = 0; j < rule.size(); ++j) os << rule.nodes[j] << ',' << rule.weights[j] << '\n';
  os.precision(old);
}

}  // namespace varbound
