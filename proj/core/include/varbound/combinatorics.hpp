#pragma once

// Factorial-type products shared by the floating-point bound code and the
// exact rational verifier. Every template works for double, long double and
// mpq_class. Empty products are one.

namespace varbound {

/// (x)_k = x(x-1)...(x-k+1), with (x)_0 = 1.
template <class T>
T falling(const T& x, int k) {
  T out(1);
  for (int j = 0; j < k; ++j) out *= x - T(j);
  return out;
}

/// [x]_k = x(x+1)...(x+k-1), with [x]_0 = 1.
template <class T>
T rising(const T& x, int k) {
  T out(1);
  for (int j = 0; j < k; ++j) out *= x + T(j);
  return out;
}

template <class T>
T factorial(int k) {
  return falling(T(k), k);
}

template <class T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  return falling(T(n), k) / factorial<T>(k);
}

/// prod_{j=lo}^{hi} (1 - j*delta); one when hi < lo.
template <class T>
T one_minus_jdelta(int lo, int hi, const T& delta) {
  T out(1);
  for (int j = lo; j <= hi; ++j) out *= T(1) - T(j) * delta;
  return out;
}

}  // namespace varbound
