#pragma once

// Closed-form coefficient families of the S_{m,n} bounds. Templated so the
// same code runs in double and in exact rationals (mpq_class); the exact
// instantiation is what the identity verifier checks.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "varbound/combinatorics.hpp"

namespace varbound {

/// Weight of c_k^2 in E q^i (g^(i))^2: (k)_i prod_{j=k-1}^{k+i-2} (1 - j delta).
template <class T>
T spectral_weight(int k, int i, const T& delta) {
  return falling(T(k), i) * one_minus_jdelta(k - 1, k + i - 2, delta);
}

/// Leading coefficient of the Rodrigues polynomial P_k.
template <class T>
T rodrigues_leading(int k, const T& delta) {
  return one_minus_jdelta(k - 1, 2 * k - 2, delta);
}

/// lambda_{i;m,n}, i = 1..n: the unique solution of A_{m,n} lambda = 1.
template <class T>
std::vector<T> lambda_solution(int m, int n, const T& delta) {
  if (n < 1 || m < 0) throw std::invalid_argument("lambda_solution: need m >= 0, n >= 1");
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    T v = binomial<T>(n, i) /
          (falling(T(m + n), i) * one_minus_jdelta(m, m + i - 1, delta));
    if ((i - 1) % 2 == 1) v = -v;
    out.push_back(v);
  }
  return out;
}

/// rho_{k;m,n} as the finite sum over the lambda vector.
template <class T>
T rho_from_lambda(int k, int m, int n, const T& delta) {
  const auto lambda = lambda_solution(m, n, delta);
  T sum(0);
  for (int i = 1; i <= std::min(k, n); ++i)
    sum += lambda[static_cast<std::size_t>(i - 1)] * spectral_weight(k, i, delta);
  return sum;
}

/// Common denominator (m+n)_n prod_{j=m}^{m+n-1} (1 - j delta).
template <class T>
T order_normalizer(int m, int n, const T& delta) {
  return falling(T(m + n), n) * one_minus_jdelta(m, m + n - 1, delta);
}

/// rho_{k;m,n} via the three-branch closed form.
template <class T>
T rho_piecewise(int k, int m, int n, const T& delta) {
  if (k < 1) throw std::invalid_argument("rho: k must be >= 1");
  const T denom = order_normalizer(m, n, delta);
  const T tail = one_minus_jdelta(m + k, m + n + k - 1, delta);
  if (k <= m) return T(1) - falling(T(m + n - k), n) * tail / denom;
  if (k <= m + n) return T(1);
  T extra = falling(T(k - m - 1), n) * tail / denom;
  return (n - 1) % 2 == 0 ? T(T(1) + extra) : T(T(1) - extra);
}

/// r_{k;m,n}: weight of c_k^2 in the residual, defined for k > m+n.
template <class T>
T residual_coefficient(int k, int m, int n, const T& delta) {
  if (k <= m + n) throw std::invalid_argument("residual_coefficient: need k > m+n");
  return falling(T(k - m - 1), n) * one_minus_jdelta(m + k, m + n + k - 1, delta) /
         order_normalizer(m, n, delta);
}

/// Gap contraction factor between point balances m1 < m2 at fixed order n.
template <class T>
T zeta(int m1, int m2, int n, const T& delta) {
  if (!(0 <= m1 && m1 < m2) || n < 1) throw std::invalid_argument("zeta: need 0 <= m1 < m2, n >= 1");
  return order_normalizer(m2, n, delta) / order_normalizer(m1, n, delta);
}

/// Factor relating |Var - S_n| and |Var - S_{n,n}|.
template <class T>
T corollary_factor(int n, const T& delta) {
  return binomial<T>(2 * n, n) * one_minus_jdelta(n, 2 * n - 1, delta) /
         one_minus_jdelta(0, n - 1, delta);
}

/// u_{m,n,tau}: residual cap multiplier of E q^tau (g^(tau))^2.
template <class T>
T cap_coefficient(int m, int n, int tau, const T& delta) {
  if (tau < n || tau > m + n + 1) throw std::invalid_argument("cap_coefficient: tau outside [n, m+n+1]");
  return one_minus_jdelta(2 * m + n + 1, 2 * m + 2 * n, delta) /
         (binomial<T>(m + n, n) * falling(T(m + n + 1), tau) *
          one_minus_jdelta(m, m + n + tau - 1, delta));
}

/// Weight of c_k^2 (k > n+1) in S_{n,(str)} - S_{n,1}.
template <class T>
T strong_gap_weight(int k, int n, const T& delta) {
  const T lead = T(k) * (T(1) - T(k - 1) * delta) / (T(n + 1) * (T(1) - T(n) * delta));
  const T ratio = binomial<T>(k - 1, n - 1) * one_minus_jdelta(k, n + k - 2, delta) /
                  (T(n) * one_minus_jdelta(n + 1, 2 * n - 1, delta));
  return lead * (ratio - T(1));
}

/// Weight of c_k^2 (k > n) in S_{n,(weak)} - S_{n-1,1}.
template <class T>
T weak_gap_weight(int k, int n, const T& delta) {
  const T lead = T(k) * (T(1) - T(k - 1) * delta) / (T(n) * (T(1) - T(n - 1) * delta));
  const T ratio = binomial<T>(k - 1, n - 1) * one_minus_jdelta(k, n + k - 2, delta) /
                  one_minus_jdelta(n, 2 * n - 2, delta);
  return lead * (ratio - T(1));
}

}  // namespace varbound
