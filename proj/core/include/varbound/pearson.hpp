#pragma once

// Integrated Pearson distributions with delta <= 0.
//
// Every such law is an affine image X = scale * Z + shift of a normal, gamma
// or beta variable Z; the quadratic q transforms as
// q_X(x) = scale^2 * q_Z((x - shift) / scale).

#include <limits>
#include <string>
#include <string_view>
#include <variant>

namespace varbound {

struct Quadratic {
  double delta = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator()(double x) const noexcept { return (delta * x + beta) * x + gamma; }
  long double operator()(long double x) const noexcept {
    return (static_cast<long double>(delta) * x + beta) * x + gamma;
  }
};

enum class Family { Normal, Gamma, Beta };

std::string_view to_string(Family family) noexcept;

/// X = scale * Z + shift.
struct AffineMap {
  double scale = 1.0;
  double shift = 0.0;
};

/// Open interval (lo, hi); unbounded ends are +-infinity.
struct Support {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool lower_bounded() const noexcept { return lo != -std::numeric_limits<double>::infinity(); }
  bool upper_bounded() const noexcept { return hi != std::numeric_limits<double>::infinity(); }
  bool contains(double x) const noexcept { return lo < x && x < hi; }
};

struct NormalParams {
  double sigma2;  // variance of Z; Z has mean zero
};

struct GammaParams {
  double alpha;  // shape
  double theta;  // rate
};

struct BetaParams {
  double alpha;
  double beta;
};

using FamilyParams = std::variant<NormalParams, GammaParams, BetaParams>;

class PearsonDistribution {
 public:
  double mean() const noexcept { return mu_; }
  const Quadratic& q() const noexcept { return q_; }
  double delta() const noexcept { return q_.delta; }
  Family family() const noexcept { return family_; }
  const AffineMap& affine() const noexcept { return affine_; }
  const Support& support() const noexcept { return support_; }
  const FamilyParams& params() const noexcept { return params_; }

  /// Var X = E q(X) = q(mu) / (1 - delta).
  double variance() const noexcept { return q_(mu_) / (1.0 - q_.delta); }

  /// Human readable form, e.g. "beta(2,3) [x -> 1*x + 0]".
  std::string describe() const;

 private:
  friend PearsonDistribution make_distribution(Family, const FamilyParams&, const AffineMap&);

  PearsonDistribution() = default;

  double mu_ = 0.0;
  Quadratic q_;
  Family family_ = Family::Normal;
  AffineMap affine_;
  Support support_;
  FamilyParams params_ = NormalParams{1.0};
};

/// Builds the affine image of a base family member. Validates parameters.
PearsonDistribution make_distribution(Family family, const FamilyParams& params,
                                      const AffineMap& affine = {});

PearsonDistribution make_normal(double mu, double sigma2);
PearsonDistribution make_gamma(double alpha, double theta);
PearsonDistribution make_beta(double alpha, double beta);

/// Classifies IP(mu; delta, beta, gamma) and solves for the affine map.
/// Throws RejectPositiveDelta for delta > 0 and RejectDegenerate when no
/// density satisfies the integral identity.
PearsonDistribution canonicalize(double mu, double delta, double beta, double gamma);

/// Density at an interior point; throws OutOfSupport otherwise.
double density(const PearsonDistribution& dist, double x);

/// Natural log of the density (same domain as density()).
double log_density(const PearsonDistribution& dist, double x);

/// E q^i(X), by closed form.
double moment_q_power(const PearsonDistribution& dist, int i);

/// X_i with density proportional to q^i f.
PearsonDistribution derived_distribution(const PearsonDistribution& dist, int i);

/// E|X|^a < infinity  <=>  delta < 1/(a-1), for a > 1.
/// True when the density is unbounded at a finite support endpoint
/// (gamma with alpha < 1, beta with alpha < 1 or beta < 1).
bool unbounded_at_endpoint(const PearsonDistribution& dist);

bool moment_exists(double delta, double a);
bool moment_exists(const PearsonDistribution& dist, double a);

/// Parses `normal:mu=<r>,sigma2=<r>`, `gamma:alpha=<r>,theta=<r>`,
/// `beta:alpha=<r>,beta=<r>` or `pearson:mu=<r>,delta=<r>,beta=<r>,gamma=<r>`.
/// A value <r> is a decimal number or a fraction p/q. Throws Error on
/// malformed input.
PearsonDistribution parse_distribution(std::string_view literal);

}  // namespace varbound
