#include "varbound/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "varbound/errors.hpp"
#include "varbound/orthopoly.hpp"

namespace varbound {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::TrivialBound: return "trivial";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

ProbeOutcome classify_estimates(const std::vector<double>& estimates) {
  for (const double e : estimates)
    if (!std::isfinite(e)) return ProbeOutcome::Divergent;
  int run = 0;
  for (std::size_t j = 1; j < estimates.size(); ++j) {
    const double prev = std::max(std::abs(estimates[j - 1]), 1e-300);
    if (std::abs(estimates[j]) > 2.0 * prev) {
      if (++run >= 3) return ProbeOutcome::Divergent;
    } else {
      run = 0;
    }
  }
  if (estimates.size() < 2) return ProbeOutcome::Finite;
  const double last = estimates.back();
  const double before = estimates[estimates.size() - 2];
  const double denom = std::max({std::abs(last), std::abs(before), 1e-12});
  return std::abs(last - before) / denom <= 0.05 ? ProbeOutcome::Finite : ProbeOutcome::Unsettled;
}

std::vector<QuadratureRule> probe_rules(const PearsonDistribution& dist) {
  std::vector<QuadratureRule> rules;
  for (int j = 0, size = kProbeBaseSize; j <= kProbeDoublings; ++j, size *= 2) rules.push_back(gauss_rule(dist, size));
  return rules;
}

ProbeResult probe_expectation(const PearsonDistribution& dist, const std::vector<QuadratureRule>& rules,
                              const Expr& h, int q_power, bool squared, Accumulation acc) {
  ProbeResult out;
  const Quadratic& q = dist.q();
  for (const auto& rule : rules) {
    double e = 0.0;
    try {
      e = expectation(
          rule,
          [&](double x) {
            const double v = h.evaluate(x);
            return std::pow(q(x), q_power) * (squared ? v * v : std::abs(v));
          },
          acc);
    } catch (const EvalOverflow&) {
      e = std::numeric_limits<double>::infinity();
    } catch (const EvalDomainError& err) {
      throw EvalDomainError(std::string("g is undefined inside the support: ") + err.what());
    }
    out.sizes.push_back(static_cast<int>(rule.size()));
    out.estimates.push_back(std::isfinite(e) ? e : std::numeric_limits<double>::infinity());
  }
  out.outcome = classify_estimates(out.estimates);
  return out;
}

MembershipReport check_membership(const PearsonDistribution& dist, const Expr& g, int m, int n,
                                  const EvalOptions& options) {
  if (m < 0 || n < 0) throw std::invalid_argument("check_membership: m and n must be >= 0");
  MembershipReport report;
  report.m = m;
  report.n = n;
  report.ell = std::max(m, n);
  const auto rules = probe_rules(dist);

  std::vector<Expr> derivs{g};
  for (int i = 1; i <= report.ell; ++i) derivs.push_back(differentiate(derivs.back(), 1));

  std::ostringstream diag;
  bool divergent_required = false;
  bool divergent_other = false;
  bool unsettled = false;
  auto record = [&](const ProbeResult& r, bool required, const char* what, int i) {
    if (r.outcome == ProbeOutcome::Divergent) {
      (required ? divergent_required : divergent_other) = true;
      diag << what << '[' << i << "] diverges; ";
    } else if (r.outcome == ProbeOutcome::Unsettled) {
      unsettled = true;
      diag << what << '[' << i << "] unsettled; ";
    }
    return r.outcome != ProbeOutcome::Divergent;
  };

  for (int i = 0; i <= n; ++i) {
    const auto r = probe_expectation(dist, rules, derivs[static_cast<std::size_t>(i)], i, true, options.accumulation);
    report.finite_quadratic.push_back(record(r, i == n, "E q^i (g^(i))^2", i));
  }
  for (int i = 0; i <= report.ell; ++i) {
    const auto r = probe_expectation(dist, rules, derivs[static_cast<std::size_t>(i)], i, false, options.accumulation);
    report.finite_linear.push_back(record(r, i > n && i <= m, "E q^i |g^(i)|", i));
  }

  if (divergent_required || divergent_other) {
    report.verdict = Verdict::TrivialBound;
  } else if (unsettled) {
    report.verdict = Verdict::Unknown;
  } else {
    report.verdict = Verdict::Member;
  }
  report.diagnostic = diag.str();
  if (!report.diagnostic.empty()) report.diagnostic.resize(report.diagnostic.size() - 2);
  return report;
}

}  // namespace varbound
