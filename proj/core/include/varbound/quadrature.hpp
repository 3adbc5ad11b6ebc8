#pragma once

#include <cstddef>
#include <vector>

namespace varbound {

enum class Accumulation {
  Extended,  // long double running sums
  Plain,     // double running sums
};

struct EvalOptions {
  int quad_size = 160;          // Gauss points used for expectations
  Accumulation accumulation = Accumulation::Extended;
  double tol = 1e-7;            // relative to max(1, Var g(X))
};

/// Reads VARBOUND_PRECISION: "off", "0", "plain" or "double" select plain
/// accumulation, anything else (or unset) extended.
Accumulation accumulation_from_env();

struct QuadratureRule {
  std::vector<double> nodes;    // ascending, inside the support
  std::vector<double> weights;  // non-negative, summing to one

  std::size_t size() const noexcept { return nodes.size(); }
};

/// sum_j w_j f(x_j). Nodes whose weight underflowed to zero are skipped, so an
/// overflowing f there cannot turn the sum into NaN.
template <class F>
double expectation(const QuadratureRule& rule, F&& f, Accumulation acc = Accumulation::Extended) {
  if (acc == Accumulation::Extended) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      if (rule.weights[j] == 0.0) continue;
      s += static_cast<long double>(rule.weights[j]) * static_cast<long double>(f(rule.nodes[j]));
    }
    return static_cast<double>(s);
  }
  double s = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    if (rule.weights[j] == 0.0) continue;
    s += rule.weights[j] * static_cast<double>(f(rule.nodes[j]));
  }
  return s;
}

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// sub-diagonal (implicit QL). Throws EigenFailure if it does not converge.
std::vector<long double> tridiagonal_eigenvalues(std::vector<long double> diag,
                                                 std::vector<long double> offdiag);

}  // namespace varbound
