#pragma once

// Orthonormal polynomial system {phi_k} of an integrated Pearson law, its
// Rodrigues norms, and Gauss rules built from the recurrence (Golub-Welsch).
//
// Monic recurrence:  p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),
// orthonormal form:  x phi_k = sqrt(b_{k+1}) phi_{k+1} + a_k phi_k + sqrt(b_k) phi_{k-1}.
//
// The coefficients come in closed form from the differential equation
// q y'' + (mu - x) y' + k(1 - (k-1) delta) y = 0 that P_k satisfies, evaluated
// in long double.

#include <iosfwd>
#include <vector>

#include "varbound/expr.hpp"
#include "varbound/pearson.hpp"
#include "varbound/quadrature.hpp"

namespace varbound {

struct RecurrenceTable {
  int degree_cap = 0;            // K
  double delta = 0.0;
  std::vector<long double> a;    // a_0 .. a_K
  std::vector<long double> b;    // b_0 .. b_K, b_0 = 1 (total mass)
  std::vector<double> norms;     // h_k = E P_k^2 for the Rodrigues P_k, k = 0 .. K
};

/// Polynomial in powers of (x - center).
struct Polynomial {
  long double center = 0.0L;
  std::vector<long double> coeffs;  // coeffs[j] multiplies (x - center)^j

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  long double operator()(long double x) const;
  Polynomial derivative(int order = 1) const;
  /// Coefficients in the plain monomial basis (center 0).
  std::vector<long double> monomial_coefficients() const;
};

/// Throws NumericalBreakdown when a b_k loses positivity.
RecurrenceTable recurrence(const PearsonDistribution& dist, int K);

/// phi_k(x) for k <= K; throws DegreeExceeded otherwise.
double evaluate_phi(const RecurrenceTable& table, int k, double x);

/// phi_0(x) .. phi_K(x).
std::vector<long double> evaluate_phis(const RecurrenceTable& table, long double x);

/// Coefficient expansion of phi_k around the mean.
Polynomial phi_polynomial(const RecurrenceTable& table, int k, long double center);

/// h_k = k! E q^k(X) prod_{j=k-1}^{2k-2} (1 - j delta).
double rodrigues_norm(const PearsonDistribution& dist, int k);

/// K-point Gauss rule for the law of X.
QuadratureRule gauss_rule(const PearsonDistribution& dist, int K);

/// nu^(i)_k with phi_{k+i}^(i) = nu^(i)_k phi_{k,i}, where phi_{k,i} is
/// orthonormal for the derived law X_i.
double nu_coefficient(const PearsonDistribution& dist, int k, int i);

/// |E P_k(X) g(X) - E q^k(X) g^(k)(X)| under a Gauss rule of the given size.
double stein_identity_check(const PearsonDistribution& dist, const Expr& g, int k,
                            const EvalOptions& options = {});

/// node,weight rows with a header line.
void write_csv(std::ostream& os, const QuadratureRule& rule);

}  // namespace varbound
