#include "varbound/pearson.hpp"

#include <cmath>
#include <sstream>

#include "varbound/errors.hpp"

namespace varbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Mean and quadratic of the base variable Z (before the affine map).
double base_mean(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, NormalParams>) {
          return 0.0;
        } else if constexpr (std::is_same_v<P, GammaParams>) {
          return p.alpha / p.theta;
        } else {
          return p.alpha / (p.alpha + p.beta);
        }
      },
      params);
}

Support base_support(Family family) {
  switch (family) {
    case Family::Normal: return {-kInf, kInf};
    case Family::Gamma: return {0.0, kInf};
    case Family::Beta: return {0.0, 1.0};
  }
  return {};
}

double base_log_density(const FamilyParams& params, double z) {
  return std::visit(
      [z](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, NormalParams>) {
          return -0.5 * z * z / p.sigma2 - 0.5 * std::log(2.0 * M_PI * p.sigma2);
        } else if constexpr (std::is_same_v<P, GammaParams>) {
          return p.alpha * std::log(p.theta) - std::lgamma(p.alpha) + (p.alpha - 1.0) * std::log(z) -
                 p.theta * z;
        } else {
          return std::lgamma(p.alpha + p.beta) - std::lgamma(p.alpha) - std::lgamma(p.beta) +
                 (p.alpha - 1.0) * std::log(z) + (p.beta - 1.0) * std::log1p(-z);
        }
      },
      params);
}

// E q_Z^i(Z) for the base variable.
long double base_q_moment(const FamilyParams& params, int i) {
  return std::visit(
      [i](const auto& p) -> long double {
        using P = std::decay_t<decltype(p)>;
        long double out = 1.0L;
        if constexpr (std::is_same_v<P, NormalParams>) {
          for (int j = 0; j < i; ++j) out *= p.sigma2;
        } else if constexpr (std::is_same_v<P, GammaParams>) {
          // [alpha]_i / theta^{2i}
          for (int j = 0; j < i; ++j) out *= (p.alpha + j) / (static_cast<long double>(p.theta) * p.theta);
        } else {
          // [a]_i [b]_i / ([a+b]_{2i} (a+b)^i)
          const long double s = static_cast<long double>(p.alpha) + p.beta;
          for (int j = 0; j < i; ++j) {
            out *= (p.alpha + j) * (p.beta + j);
            out /= (s + 2 * j) * (s + 2 * j + 1) * s;
          }
        }
        return out;
      },
      params);
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Normal: return "normal";
    case Family::Gamma: return "gamma";
    case Family::Beta: return "beta";
  }
  return "unknown";
}

std::string PearsonDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(family_) << '(';
  std::visit(
      [&os](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, NormalParams>) {
          os << "sigma2=" << p.sigma2;
        } else if constexpr (std::is_same_v<P, GammaParams>) {
          os << "alpha=" << p.alpha << ",theta=" << p.theta;
        } else {
          os << "alpha=" << p.alpha << ",beta=" << p.beta;
        }
      },
      params_);
  os << ") [x = " << affine_.scale << "*z + " << affine_.shift << ']';
  return os.str();
}

PearsonDistribution make_distribution(Family family, const FamilyParams& params, const AffineMap& affine) {
  if (!std::isfinite(affine.scale) || affine.scale == 0.0 || !std::isfinite(affine.shift))
    throw RejectDegenerate("affine map needs a finite non-zero scale");

  PearsonDistribution d;
  d.family_ = family;
  d.params_ = params;
  d.affine_ = affine;
  const double c = affine.scale;
  const double s = affine.shift;

  switch (family) {
    case Family::Normal: {
      const auto* p = std::get_if<NormalParams>(&params);
      if (p == nullptr || !positive_finite(p->sigma2)) throw RejectDegenerate("normal needs sigma2 > 0");
      d.q_ = {0.0, 0.0, c * c * p->sigma2};
      break;
    }
    case Family::Gamma: {
      const auto* p = std::get_if<GammaParams>(&params);
      if (p == nullptr || !positive_finite(p->alpha) || !positive_finite(p->theta))
        throw RejectDegenerate("gamma needs alpha > 0 and theta > 0");
      d.q_ = {0.0, c / p->theta, -c * s / p->theta};
      break;
    }
    case Family::Beta: {
      const auto* p = std::get_if<BetaParams>(&params);
      if (p == nullptr || !positive_finite(p->alpha) || !positive_finite(p->beta))
        throw RejectDegenerate("beta needs alpha > 0 and beta > 0");
      const double ab = p->alpha + p->beta;
      d.q_ = {-1.0 / ab, (2.0 * s + c) / ab, -s * (c + s) / ab};
      break;
    }
  }

  d.mu_ = c * base_mean(params) + s;
  const Support zs = base_support(family);
  const double a = c * zs.lo + s;
  const double b = c * zs.hi + s;
  d.support_ = c > 0 ? Support{a, b} : Support{b, a};
  return d;
}

PearsonDistribution make_normal(double mu, double sigma2) {
  return make_distribution(Family::Normal, NormalParams{sigma2}, {1.0, mu});
}

PearsonDistribution make_gamma(double alpha, double theta) {
  return make_distribution(Family::Gamma, GammaParams{alpha, theta});
}

PearsonDistribution make_beta(double alpha, double beta) {
  return make_distribution(Family::Beta, BetaParams{alpha, beta});
}

PearsonDistribution canonicalize(double mu, double delta, double beta, double gamma) {
  if (!std::isfinite(mu) || !std::isfinite(delta) || !std::isfinite(beta) || !std::isfinite(gamma))
    throw RejectDegenerate("parameters must be finite");
  if (delta > 0.0) throw RejectPositiveDelta("delta > 0 is outside the supported family (need delta <= 0)");
  if (std::abs(delta) + std::abs(beta) + std::abs(gamma) == 0.0)
    throw RejectDegenerate("q must not vanish identically");

  const Quadratic q{delta, beta, gamma};

  if (delta < 0.0) {
    // Beta type: q(x) = -(x - r1)(x - r2)/(a+b) with mu strictly between the roots.
    const double disc = beta * beta - 4.0 * delta * gamma;
    if (!(disc > 0.0)) throw RejectDegenerate("delta < 0 needs two distinct real roots of q");
    const double sq = std::sqrt(disc);
    // Stable root pair.
    const double t = -0.5 * (beta + std::copysign(sq, beta));
    double r1 = t / delta;
    double r2 = t != 0.0 ? gamma / t : -r1;
    if (r1 > r2) std::swap(r1, r2);
    const double ab = -1.0 / delta;
    const double width = r2 - r1;
    const double a = ab * (mu - r1) / width;
    const double b = ab - a;
    if (!(a > 0.0 && b > 0.0)) throw RejectDegenerate("mean must lie strictly between the roots of q");
    auto dist = make_distribution(Family::Beta, BetaParams{a, b}, {width, r1});
    return dist;
  }

  if (beta != 0.0) {
    // Gamma type: q(x) = beta (x - root), support on the side where q > 0.
    const double root = -gamma / beta;
    const double alpha = q(mu) / (beta * beta);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw RejectDegenerate("need q(mu) > 0 for a gamma-type law");
    return make_distribution(Family::Gamma, GammaParams{alpha, 1.0 / std::abs(beta)},
                             {beta > 0.0 ? 1.0 : -1.0, root});
  }

  if (!(gamma > 0.0)) throw RejectDegenerate("delta = beta = 0 needs gamma > 0");
  return make_normal(mu, gamma);
}

double log_density(const PearsonDistribution& dist, double x) {
  if (!dist.support().contains(x)) throw OutOfSupport("point outside the open support");
  const auto& af = dist.affine();
  const double z = (x - af.shift) / af.scale;
  return base_log_density(dist.params(), z) - std::log(std::abs(af.scale));
}

double density(const PearsonDistribution& dist, double x) { return std::exp(log_density(dist, x)); }

double moment_q_power(const PearsonDistribution& dist, int i) {
  if (i < 0) throw std::invalid_argument("moment_q_power: i must be >= 0");
  long double c2 = static_cast<long double>(dist.affine().scale) * dist.affine().scale;
  long double scale = 1.0L;
  for (int j = 0; j < i; ++j) scale *= c2;
  return static_cast<double>(scale * base_q_moment(dist.params(), i));
}

PearsonDistribution derived_distribution(const PearsonDistribution& dist, int i) {
  if (i < 0) throw std::invalid_argument("derived_distribution: i must be >= 0");
  // q^i f is again a member of the same family with shifted parameters and
  // the same affine map.
  const FamilyParams next = std::visit(
      [i](const auto& p) -> FamilyParams {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, NormalParams>) {
          return p;
        } else if constexpr (std::is_same_v<P, GammaParams>) {
          return GammaParams{p.alpha + i, p.theta};
        } else {
          return BetaParams{p.alpha + i, p.beta + i};
        }
      },
      dist.params());
  return make_distribution(dist.family(), next, dist.affine());
}

bool moment_exists(double delta, double a) {
  if (!(a > 1.0)) throw std::invalid_argument("moment_exists: need a > 1");
  return delta < 1.0 / (a - 1.0);
}

bool moment_exists(const PearsonDistribution& dist, double a) { return moment_exists(dist.delta(), a); }

bool unbounded_at_endpoint(const PearsonDistribution& dist) {
  return std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, GammaParams>) return p.alpha < 1.0;
        else if constexpr (std::is_same_v<P, BetaParams>) return p.alpha < 1.0 || p.beta < 1.0;
        else return false;
      },
      dist.params());
}

}  // namespace varbound
