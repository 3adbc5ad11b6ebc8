#pragma once

// Universal variance bounds S_{m,n}(g) for X ~ IP(mu; delta, beta, gamma),
// delta <= 0, together with the bounds they generalize:
//
//   S_{m,n}(g) = sum_{i=1}^m a_i E^2[q^i g^(i)] + sum_{i=1}^n (-1)^{i-1} b_i E[q^i (g^(i))^2]
//
// and (-1)^n (Var g(X) - S_{m,n}(g)) >= 0 with equality exactly for
// polynomials of degree <= m+n.

#include <string>
#include <vector>

#include "varbound/expr.hpp"
#include "varbound/membership.hpp"
#include "varbound/pearson.hpp"
#include "varbound/quadrature.hpp"

namespace varbound {

/// Expectations every bound is assembled from, evaluated once per (X, g).
struct DerivativeMoments {
  int order = 0;
  double delta = 0.0;
  double mean = 0.0;                // E g(X)
  double variance = 0.0;            // E (g(X) - E g(X))^2
  std::vector<double> linear;       // E q^i g^(i),      i = 0..order
  std::vector<double> quadratic;    // E q^i (g^(i))^2,  i = 0..order
  std::vector<double> q_moments;    // E q^i(X),         i = 0..order
};

/// Throws DivergentExpectation if an expectation is not finite.
DerivativeMoments derivative_moments(const PearsonDistribution& dist, const Expr& g, int order,
                                     const EvalOptions& options = {});

struct TheoremCoefficients {
  std::vector<double> a;       // a_1 .. a_m
  std::vector<double> b;       // b_1 .. b_n
  std::vector<double> lambda;  // lambda_{i;m,n} = (-1)^{i-1} b_i
};

/// Products are accumulated in log space when m + n > kLogSpaceThreshold.
inline constexpr int kLogSpaceThreshold = 12;

/// n = 0 is accepted and yields the Bessel-type coefficients.
TheoremCoefficients theorem_coefficients(int m, int n, double delta, const std::vector<double>& q_moments);

/// Same, forcing the log-space (true) or direct (false) evaluation.
TheoremCoefficients theorem_coefficients(int m, int n, double delta, const std::vector<double>& q_moments,
                                         bool log_space);

struct BoundReport {
  int m = 0;
  int n = 0;
  Verdict verdict = Verdict::Member;
  double value = 0.0;      // S_{m,n}; +-inf for a trivial bound
  double variance = 0.0;   // NaN when not computed
  double residual = 0.0;   // (-1)^n (Var - S)
  double scale = 1.0;      // max(1, Var)
  bool sign_ok = true;
  bool equality = false;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> lambda;
  int tau = -1;            // set when a residual cap was requested
  double cap = 0.0;
  std::string diagnostic;
};

BoundReport bound_from_moments(const DerivativeMoments& moments, int m, int n, double tol = 1e-7);

BoundReport bound_smn(const PearsonDistribution& dist, const Expr& g, int m, int n,
                      const EvalOptions& options = {});

/// Verdict of S_{m,n} implied by a membership report taken at (M, n), M >= m.
Verdict verdict_for(const MembershipReport& report, int m, int n);

// Earlier bounds, evaluated verbatim from the moments.
double legacy_sn(const DerivativeMoments& moments, int n);
double legacy_bessel(const DerivativeMoments& moments, int n);
double legacy_strong(const DerivativeMoments& moments, int n);
double legacy_weak(const DerivativeMoments& moments, int n);

// Same, from (X, g); throw TrivialBound when the order-n moment diverges.
double bound_legacy_sn(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options = {});
double bound_bessel(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options = {});
double bound_str(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options = {});
double bound_weak(const PearsonDistribution& dist, const Expr& g, int n, const EvalOptions& options = {});

/// u_tau E q^tau (g^(tau))^2 for tau in [n, m+n+1]; throws MembershipFailure
/// unless g is numerically in H^{tau,tau}.
double residual_cap(const PearsonDistribution& dist, const Expr& g, int m, int n, int tau,
                    const EvalOptions& options = {});
double residual_cap(const DerivativeMoments& moments, int m, int n, int tau);

struct FourierSpectrum {
  std::vector<double> c;     // c_0 .. c_K
  int truncation = 0;
  double tail_estimate = 0.0;  // |Var - sum_{k=1}^K c_k^2|
};

FourierSpectrum fourier_coefficients(const PearsonDistribution& dist, const Expr& g, int K,
                                     const EvalOptions& options = {});

/// Smallest K = K0 * 2^j (capped at kMaxTruncation) whose Parseval tail is
/// below 1e-14 max(1, Var g(X)).
inline constexpr int kMaxTruncation = 256;
int adaptive_truncation(const PearsonDistribution& dist, const Expr& g, int K0, const EvalOptions& options = {});

/// Var g(X) by quadrature; throws DivergentExpectation if E g^2 diverges.
double variance(const PearsonDistribution& dist, const Expr& g, const EvalOptions& options = {});

/// Direct versus coefficient-side evaluation of E q^i (g^(i))^2 and E q^i g^(i).
struct SpectralComparison {
  int i = 0;
  double direct_quadratic = 0.0;
  double spectral_quadratic = 0.0;
  double direct_linear = 0.0;
  double spectral_linear = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

std::vector<SpectralComparison> spectral_equivalence(const PearsonDistribution& dist, const Expr& g, int max_i,
                                                     int K, const EvalOptions& options = {});

struct GapRow {
  int m1 = 0;
  int m2 = 0;
  double gap1 = 0.0;   // |Var - S_{m1,n}|
  double gap2 = 0.0;   // |Var - S_{m2,n}|
  double zeta = 0.0;
  double slack = 0.0;  // gap1 - zeta * gap2
  bool ok = false;
};

struct CorollaryCheck {
  int n = 0;
  double gap_legacy = 0.0;  // |Var - S_n|
  double gap_new = 0.0;     // |Var - S_{n,n}|
  double factor = 0.0;
  double slack = 0.0;
  bool ok = false;
};

struct ChernoffCheck {
  int n = 0;
  double s_n1 = 0.0;     // S_{n,1}
  double s_str = 0.0;    // S_{n,(str)}
  double s_nm1_1 = 0.0;  // S_{n-1,1}
  double s_weak = 0.0;   // S_{n,(weak)}
  bool ok_str = false;
  bool ok_weak = false;
};

struct ComparisonTable {
  int n = 0;
  int m_max = 0;
  double variance = 0.0;
  double scale = 1.0;
  std::vector<BoundReport> sweep;  // m = 0..m_max at order n
  std::vector<GapRow> gaps;        // all 0 <= m1 < m2 <= m_max
  CorollaryCheck corollary;
  ChernoffCheck chernoff;
  bool all_ok = false;
};

ComparisonTable compare_from_moments(const DerivativeMoments& moments, int n, int m_max, double tol);

/// Throws TrivialBound when g fails the finiteness conditions.
ComparisonTable compare_suite(const PearsonDistribution& dist, const Expr& g, int n, int m_max,
                              const EvalOptions& options = {});

/// Bounds S_{m,n}, m = 0..m_max, sharing one set of moments.
std::vector<BoundReport> sweep(const PearsonDistribution& dist, const Expr& g, int n, int m_max,
                               const EvalOptions& options = {});

}  // namespace varbound
