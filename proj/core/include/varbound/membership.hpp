#pragma once

// Numerical diagnosis of g in H^{m,n}(X): the finiteness conditions
// E q^n (g^(n))^2 < inf and E q^i |g^(i)| < inf (n < i <= m) are probed with
// Gauss rules of doubling size. A moment counts as divergent when its
// estimates grow by more than a factor 2 across three consecutive doublings,
// or when an estimate overflows.

#include <string>
#include <vector>

#include "varbound/expr.hpp"
#include "varbound/pearson.hpp"
#include "varbound/quadrature.hpp"

namespace varbound {

enum class Verdict { Member, TrivialBound, Unknown };

std::string_view to_string(Verdict v) noexcept;

enum class ProbeOutcome { Finite, Divergent, Unsettled };

struct ProbeResult {
  std::vector<int> sizes;
  std::vector<double> estimates;  // +inf marks an overflowed estimate
  ProbeOutcome outcome = ProbeOutcome::Finite;
};

/// Classifies a sequence of estimates taken at doubling rule sizes.
ProbeOutcome classify_estimates(const std::vector<double>& estimates);

struct MembershipReport {
  int m = 0;
  int n = 0;
  int ell = 0;                          // max(m, n)
  std::vector<bool> finite_quadratic;   // i = 0..n : E q^i (g^(i))^2
  std::vector<bool> finite_linear;      // i = 0..ell : E q^i |g^(i)|
  Verdict verdict = Verdict::Unknown;
  std::string diagnostic;
};

inline constexpr int kProbeBaseSize = 16;
inline constexpr int kProbeDoublings = 4;

/// Probes one expectation E h(X) over rule sizes 16, 32, ..., 256.
ProbeResult probe_expectation(const PearsonDistribution& dist, const std::vector<QuadratureRule>& rules,
                              const Expr& h, int q_power, bool squared, Accumulation acc);

/// Gauss rules of sizes 16 * 2^j, j = 0..4.
std::vector<QuadratureRule> probe_rules(const PearsonDistribution& dist);

/// Throws EvalDomainError if g or a needed derivative is undefined at a rule
/// node inside the support.
MembershipReport check_membership(const PearsonDistribution& dist, const Expr& g, int m, int n,
                                  const EvalOptions& options = {});

}  // namespace varbound
