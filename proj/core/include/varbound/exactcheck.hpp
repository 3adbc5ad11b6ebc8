#pragma once

// Exact verification of the coefficient algebra: the linear system behind
// lambda, its determinants, and the hypergeometric identity behind rho.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace varbound {

using Rational = mpq_class;

/// "-1/2", "3", "-0.25". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

struct ExactMatrix {
  int dim = 0;
  std::vector<Rational> entries;  // row-major

  explicit ExactMatrix(int n);

  Rational& operator()(int r, int c) { return entries[static_cast<std::size_t>(r * dim + c)]; }
  const Rational& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r * dim + c)]; }
};

/// A_{m,n}: a_{r,c} = (m+r)_c prod_{j=m+r-1}^{m+r+c-2} (1 - j delta), r, c = 1..n.
ExactMatrix build_A(int m, int n, const Rational& delta);

/// A with column `col` (1-based) replaced by the all-ones vector.
ExactMatrix replace_column_with_ones(const ExactMatrix& a, int col);

/// Fraction-free elimination; rows are first scaled to integers.
Rational bareiss_determinant(const ExactMatrix& a);

/// Solves A x = 1 by Cramer's rule. Throws SingularMatrix.
std::vector<Rational> cramer_solve(const ExactMatrix& a);

struct DeterminantForms {
  Rational d;                // d_{m,n}
  std::vector<Rational> di;  // d_{i;m,n}, i = 1..n
};

DeterminantForms det_closed_forms(int m, int n, const Rational& delta);

struct HypergeometricCheck {
  Rational lhs;
  Rational rhs;
  Rational classical;  // Vandermonde (delta = 0) or Dougall-form right side
  bool holds = false;
};

HypergeometricCheck hypergeometric_terms(int m, int n, int k, const Rational& delta);
bool hypergeometric_identity(int m, int n, int k, const Rational& delta);

struct VerifyRow {
  std::string identity;
  int m = 0;
  int n = 0;
  Rational delta;
  bool pass = false;
  std::string detail;
};

/// All identities for 0 <= m <= max_order, 1 <= n <= max_order, every delta,
/// and 0 <= k <= k_max where k enters.
std::vector<VerifyRow> verify_suite(int max_order, const std::vector<Rational>& deltas, int k_max);

}  // namespace varbound
